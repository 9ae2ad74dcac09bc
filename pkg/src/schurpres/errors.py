"""Exception types shared across the package."""


class ParameterError(ValueError):
    """Invalid or out-of-domain parameters (bad prime, d >= q, n = 1 for rational cases...)."""


class ResourceCapExceeded(RuntimeError):
    """A desk-scale guardrail (grid size, closure cap, rewrite step cap) was hit."""


class RewriteStepCapExceeded(ResourceCapExceeded):
    def __init__(self, word, steps):
        super().__init__(f"rewrite did not finish within {steps} steps; offending word: {word!r}")
        self.word = word
        self.steps = steps
