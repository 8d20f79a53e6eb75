"""Pinned configuration defaults."""

#: Pattern height for all embeddings.
DEFAULT_Q = 1

#: Number of nearest reference solutions kept per query.
DEFAULT_K = 5

#: Cardinality cutoff for the minimal fix set.
DEFAULT_MAX_FIXES = 3

#: Interpreter step budget per test (statements + predicate evaluations).
DEFAULT_BUDGET = 1_000_000

#: Most detailed feedback level.
DEFAULT_LEVEL = 5
