from fractions import Fraction


def parse_rational(v: object) -> Fraction:
    """Parse a "p/q" string, an integer string or a bare JSON integer"""
    if isinstance(v, bool):
        raise ValueError("Expected a rational, got a boolean")
    if isinstance(v, int):
        return Fraction(v)
    if isinstance(v, float):
        raise ValueError("Bare floats are not exact, write %r as a \"p/q\" string" % v)
    if isinstance(v, str):
        s = v.strip()
        if not s:
            raise ValueError("Empty rational")
        return Fraction(s)
    raise ValueError("Expected a rational, got %s" % type(v).__name__)


def format_rational(v: Fraction) -> int | str:
    if v.denominator == 1:
        return int(v.numerator)
    return "%d/%d" % (v.numerator, v.denominator)


def format_number(v: Fraction, numeric: str = "exact") -> int | str | float:
    if numeric == "float":
        return float(v)
    return format_rational(v)


def parse_index_list(text: str) -> list[str]:
    """Split a comma separated list of labels"""
    return [p.strip() for p in text.split(",") if p.strip()]
