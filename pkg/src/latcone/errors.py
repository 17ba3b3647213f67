class CheckFailure(AssertionError):
    """A mathematical assertion failed on a concrete instance.

    ``instance`` carries enough data to reproduce the failure.
    """

    def __init__(self, message, instance=None):
        super().__init__(message)
        self.instance = instance or {}
