"""Finite computations around Fraïssé classes: structures and embeddings,
amalgamation checks, finite Fraïssé chains, Ramsey and EPPA witness search,
random graphs, trees, and the levels of the G0 graph."""

__version__ = "0.1.0"
