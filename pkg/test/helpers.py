import sys
from fractions import Fraction

from lipfree.metric import MetricSpace, path_space


def require(v, e) -> bool:
    if e == v:
        return False
    print("Error expected '%s' found '%s'" % (e, v), file=sys.stderr)
    return True


def require_true(v, what: str) -> bool:
    if v:
        return False
    print("Error expected %s" % what, file=sys.stderr)
    return True


def require_raises(exc: type[BaseException], func, *args) -> bool:
    try:
        func(*args)
    except exc:
        return False
    print("Error expected %s" % exc.__name__, file=sys.stderr)
    return True


def line(n: int) -> MetricSpace:
    """The points 0, ..., n-1 on a line, base 0"""
    return path_space(n - 1)


def two_point(d: Fraction | int, other: str = "a") -> MetricSpace:
    return MetricSpace(["e", other], 0, [[0, d], [d, 0]])
