import sys


class LipfreeError(Exception):
    """Base class of every error raised on bad input"""

    def __init__(self, message: str, context: str = "") -> None:
        super().__init__(message)
        self.message = message
        self.context = context

    def describe(self, path: str = "lipfree") -> None:
        error(path, self.context or type(self).__name__, self.message)


class ICE(Exception):
    def __init__(self, what: str = "") -> None:
        super().__init__("Internal consistency error" + (": " + what if what else ""))


def error(
    path: str,
    context: str,
    message: str,
    error: str = "Error",
    detail: str | None = None,
) -> None:
    print("%s: %s in %s: %s" % (path, error, context, message), file=sys.stderr)
    if detail:
        print(detail, file=sys.stderr)
