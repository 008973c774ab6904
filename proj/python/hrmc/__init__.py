from ._hrmc import Error, Grammar, check, differential, recolor

__all__ = ["Error", "Grammar", "check", "differential", "recolor"]
