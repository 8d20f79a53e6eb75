"""Corpus indexing and top-k retrieval of syntactically nearest programs.

An index admits only programs that pass the full suite; each entry
carries the control-flow signature and the offline-computed Pacv.  The
syntactic distance is the selected embedding (or tree edit) distance when
control-flow signatures match exactly, infinite otherwise.
"""

from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from .defaults import DEFAULT_BUDGET, DEFAULT_Q
from .embed import (
    CharacteristicVector,
    Pacv,
    cv_distance,
    pacv_distance,
    program_pacv,
    tree_edit_distance,
)
from .errors import EmptyCandidates, ParseError
from .interp import Suite, run_tests
from .lang.ast import Node
from .lang.cf import CfSignature, cf_signature
from .lang.parser import parse

MODES = ("pacv", "cv", "ted")


@dataclass
class CorpusEntry:
    program_id: str
    source_path: Path
    cf: CfSignature
    pacv: Pacv
    order: int
    passes_suite: bool = True
    _source: Optional[str] = field(default=None, repr=False)
    _ast: Optional[Node] = field(default=None, repr=False)
    _cv: Optional[CharacteristicVector] = field(default=None, repr=False)

    def source(self) -> str:
        if self._source is None:
            self._source = Path(self.source_path).read_text()
        return self._source

    def ast(self) -> Node:
        if self._ast is None:
            self._ast = parse(self.source())
        return self._ast

    def cv(self) -> CharacteristicVector:
        if self._cv is None:
            self._cv = self.pacv.to_cv()
        return self._cv


@dataclass
class CorpusIndex:
    entries: list[CorpusEntry]
    q: int

    def __len__(self) -> int:
        return len(self.entries)

    def save(self, path: str | Path) -> None:
        path = Path(path)
        base = path.parent
        lines = []
        for e in self.entries:
            try:
                src = str(Path(e.source_path).relative_to(base))
            except ValueError:
                src = str(e.source_path)
            lines.append(json.dumps({
                "program_id": e.program_id,
                "cf_signature": list(e.cf),
                "pacv": e.pacv.to_jsonable(),
                "source_path": src,
            }, sort_keys=True))
        path.write_text("\n".join(lines) + ("\n" if lines else ""))

    @classmethod
    def load(cls, path: str | Path) -> "CorpusIndex":
        path = Path(path)
        base = path.parent
        entries = []
        q = DEFAULT_Q
        for i, line in enumerate(path.read_text().splitlines()):
            if not line.strip():
                continue
            data = json.loads(line)
            pacv = Pacv.from_jsonable(data["pacv"])
            q = pacv.q
            src = Path(data["source_path"])
            if not src.is_absolute():
                src = base / src
            entries.append(CorpusEntry(
                program_id=data["program_id"],
                source_path=src,
                cf=tuple(data["cf_signature"]),
                pacv=pacv,
                order=i,
            ))
        return cls(entries, q)

    def sampled(self, frac: float, seed: int) -> "CorpusIndex":
        """Deterministic down-sampling preserving insertion order."""
        if not 0 < frac <= 1:
            raise ValueError("frac must be in (0, 1]")
        if frac == 1:
            return self
        rng = random.Random(seed)
        n_keep = max(1, round(frac * len(self.entries)))
        keep = sorted(rng.sample(range(len(self.entries)), n_keep))
        return CorpusIndex([self.entries[i] for i in keep], self.q)


@dataclass
class QueryView:
    """Precomputed embeddings of the program under repair."""

    ast: Node
    cf: CfSignature
    pacv: Pacv
    _cv: Optional[CharacteristicVector] = field(default=None, repr=False)

    @classmethod
    def of(cls, program: Node, q: int) -> "QueryView":
        return cls(program, cf_signature(program), program_pacv(program, q))

    def cv(self) -> CharacteristicVector:
        if self._cv is None:
            self._cv = self.pacv.to_cv()
        return self._cv


def build_index(solutions: list[Path], suite: Suite, q: int = DEFAULT_Q,
                budget: int = DEFAULT_BUDGET,
                ) -> tuple[CorpusIndex, list[tuple[Path, str]]]:
    """Parse, test, and embed candidate solutions.

    Returns the index (admitted programs only, duplicates allowed) and a
    per-file rejection report (parse failure or failed test).
    """
    entries: list[CorpusEntry] = []
    rejections: list[tuple[Path, str]] = []
    for path in solutions:
        path = Path(path)
        source = path.read_text()
        try:
            ast = parse(source)
        except ParseError as err:
            rejections.append((path, f"parse error: {err}"))
            continue
        all_pass, outcomes = run_tests(ast, suite, budget)
        if not all_pass:
            bad = next(i for i, o in enumerate(outcomes) if not o.passed)
            rejections.append(
                (path, f"failed test {suite.tests[bad].name!r}"
                       f" ({outcomes[bad].status})"))
            continue
        entry = CorpusEntry(
            program_id=path.stem,
            source_path=path,
            cf=cf_signature(ast),
            pacv=program_pacv(ast, q),
            order=len(entries),
        )
        entry._source = source
        entry._ast = ast
        entries.append(entry)
    return CorpusIndex(entries, q), rejections


def syntactic_distance(view: QueryView, entry: CorpusEntry,
                       mode: str = "pacv") -> float:
    """Embedding or TED distance under the exact control-flow filter;
    infinite when the signatures differ."""
    if view.cf != entry.cf:
        return math.inf
    if mode == "pacv":
        return pacv_distance(view.pacv, entry.pacv)
    if mode == "cv":
        return cv_distance(view.cv(), entry.cv(), "l2")
    if mode == "ted":
        return float(tree_edit_distance(view.ast, entry.ast()))
    raise ValueError(f"unknown mode {mode!r}")


def top_k(view: QueryView, index: CorpusIndex, k: int,
          mode: str = "pacv") -> list[tuple[CorpusEntry, float]]:
    """The k nearest finite-distance entries, ascending by distance,
    ties by corpus insertion order.  Raises EmptyCandidates when no entry
    shares the query's control flow."""
    if k < 1:
        raise ValueError("k must be >= 1")
    scored = []
    for entry in index.entries:
        d = syntactic_distance(view, entry, mode)
        if math.isfinite(d):
            scored.append((d, entry.order, entry))
    if not scored:
        raise EmptyCandidates("no corpus entry matches the control-flow signature")
    scored.sort(key=lambda t: (t[0], t[1]))
    return [(entry, d) for d, _, entry in scored[:k]]
