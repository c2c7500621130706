"""Structured refusals raised by the analysis functions."""


class InvalidInput(ValueError):
    """Input outside the domain of an operation (non-ample class, r <= 0, ...)."""


class UnsupportedHypothesis(Exception):
    """The hypothesis a criterion depends on fails for this input.

    ``hypothesis`` names the failed assumption, ``result`` the criterion that
    needs it. Nothing is computed on a fallback path.
    """

    def __init__(self, hypothesis: str, result: str, detail: str = ""):
        self.hypothesis = hypothesis
        self.result = result
        self.detail = detail
        msg = f"unsupported: {result} requires {hypothesis}"
        if detail:
            msg += f" ({detail})"
        super().__init__(msg)
