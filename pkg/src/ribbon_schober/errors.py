class SchoberError(ValueError):
    """Domain error carrying a stable, machine-readable code.

    The code is what the command line reports in ``{"ok": false, "error": code}``.
    """

    def __init__(self, code, detail=None):
        self.code = code
        self.detail = detail
        super().__init__(code if detail is None else f"{code}: {detail}")
