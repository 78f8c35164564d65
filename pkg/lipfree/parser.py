"""
JSON codec for spaces, functions, vectors, witnesses and bases.

Rationals are written as bare integers or "p/q" strings; bare floats are
rejected so nothing inexact enters a computation. A space may be given inline
or as the name of a file relative to the file that mentions it.
"""

import json
import sys
import typing as ty
from collections.abc import Mapping
from fractions import Fraction

from .documents import Document, Documents
from .equivalence import LinearWitness
from .error import LipfreeError, error
from .free import FreeVector
from .lipschitz import LipFunction
from .metric import MetricSpace, validate
from .util import format_rational, parse_rational


class ParseError(LipfreeError):
    def __init__(self, path: str, message: str, context: str) -> None:
        super().__init__(message, context)
        self.path = path

    def describe(self, path: str | None = None) -> None:
        error(path or self.path, self.context, self.message, "Parse error")


def _no_duplicates(pairs: list[tuple[str, ty.Any]]) -> dict[str, ty.Any]:
    out: dict[str, ty.Any] = {}
    for k, v in pairs:
        if k in out:
            raise ValueError("Duplicate key %r" % k)
        out[k] = v
    return out


class Parser:
    documents: Documents

    def __init__(self, documents: Documents) -> None:
        self.documents = documents
        self._loaded: dict[int, ty.Any] = {}

    def fail(self, doc: Document, message: str, context: str) -> ty.NoReturn:
        raise ParseError(doc.path, message, context)

    def load(self, doc: Document) -> ty.Any:
        if doc.id not in self._loaded:
            try:
                self._loaded[doc.id] = json.loads(
                    doc.content, object_pairs_hook=_no_duplicates
                )
            except json.JSONDecodeError as err:
                self.fail(
                    doc,
                    "%s at line %d column %d" % (err.msg, err.lineno, err.colno),
                    "json",
                )
            except ValueError as err:
                self.fail(doc, str(err), "json")
        return self._loaded[doc.id]

    def root(self) -> ty.Any:
        return self.load(self.documents.root)

    def obj(self, value: ty.Any, doc: Document, context: str) -> dict[str, ty.Any]:
        if not isinstance(value, dict):
            self.fail(doc, "Expected an object", context)
        return value

    def field(self, value: dict[str, ty.Any], key: str, doc: Document, context: str) -> ty.Any:
        if key not in value:
            self.fail(doc, "Missing key %r" % key, context)
        return value[key]

    def rational(self, value: ty.Any, doc: Document, context: str) -> Fraction:
        try:
            return parse_rational(value)
        except (ValueError, ZeroDivisionError) as err:
            self.fail(doc, str(err), context)

    def resolve(self, value: ty.Any, doc: Document, context: str) -> tuple[ty.Any, Document]:
        """Follow a file reference, returning the value and the document it is in"""
        if isinstance(value, str):
            ref = self.documents.read(value, doc)
            if ref is None:
                self.fail(doc, "Cannot read %r" % value, context)
            return self.load(ref), ref
        return value, doc

    def space(self, value: ty.Any, doc: Document, context: str = "space") -> MetricSpace:
        value, doc = self.resolve(value, doc, context)
        v = self.obj(value, doc, context)
        points = self.field(v, "points", doc, context)
        base = self.field(v, "base", doc, context)
        dist = self.field(v, "dist", doc, context)
        if not isinstance(points, list) or not all(isinstance(p, str) for p in points):
            self.fail(doc, "points must be a list of labels", context)
        if isinstance(base, bool) or not isinstance(base, int):
            self.fail(doc, "base must be an integer index", context)
        if not isinstance(dist, list) or not all(isinstance(r, list) for r in dist):
            self.fail(doc, "dist must be a list of rows", context)
        rows = [
            [self.rational(x, doc, "%s dist[%d][%d]" % (context, i, j)) for j, x in enumerate(r)]
            for i, r in enumerate(dist)
        ]
        try:
            return MetricSpace(points, base, rows)
        except LipfreeError as err:
            self.fail(doc, err.message, context)

    def valid_space(
        self, value: ty.Any, doc: Document, context: str = "space"
    ) -> MetricSpace:
        space = self.space(value, doc, context)
        violations = validate(space)
        if violations:
            self.fail(
                doc,
                "Not a metric space: %s"
                % ", ".join(v.describe(space) for v in violations[:3]),
                context,
            )
        return space

    def coeffs(
        self, value: ty.Any, space: MetricSpace, doc: Document, context: str
    ) -> FreeVector:
        v = self.obj(value, doc, context)
        try:
            return FreeVector.from_labels(
                space,
                {k: self.rational(x, doc, "%s %s" % (context, k)) for k, x in v.items()},
            )
        except ParseError:
            raise
        except LipfreeError as err:
            self.fail(doc, err.message, context)

    def vector(self, value: ty.Any, doc: Document) -> FreeVector:
        v = self.obj(value, doc, "vector")
        space = self.valid_space(self.field(v, "space", doc, "vector"), doc)
        return self.coeffs(self.field(v, "coeffs", doc, "vector"), space, doc, "coeffs")

    def function(self, value: ty.Any, doc: Document) -> LipFunction:
        v = self.obj(value, doc, "function")
        space = self.valid_space(self.field(v, "space", doc, "function"), doc)
        values = self.field(v, "values", doc, "function")
        try:
            if isinstance(values, list):
                return LipFunction(
                    space, [self.rational(x, doc, "values") for x in values]
                )
            vals = self.obj(values, doc, "values")
            return LipFunction.from_labels(
                space, {k: self.rational(x, doc, "values") for k, x in vals.items()}
            )
        except ParseError:
            raise
        except LipfreeError as err:
            self.fail(doc, err.message, "function")

    def witness(self, value: ty.Any, doc: Document) -> LinearWitness:
        v = self.obj(value, doc, "witness")
        source = self.valid_space(self.field(v, "source", doc, "witness"), doc, "source")
        target = self.valid_space(self.field(v, "target", doc, "witness"), doc, "target")
        images = self.obj(self.field(v, "images", doc, "witness"), doc, "images")
        table = {}
        for label, img in images.items():
            try:
                x = source.index(label)
            except LipfreeError as err:
                self.fail(doc, err.message, "images")
            table[x] = self.coeffs(img, target, doc, "image of %s" % label)
        try:
            return LinearWitness(source, target, table)
        except LipfreeError as err:
            self.fail(doc, err.message, "witness")

    def basis(
        self, value: ty.Any, doc: Document
    ) -> tuple[MetricSpace, list[FreeVector], list[FreeVector] | None]:
        """{"space": ..., "basis": [coeffs...], "pi": [coeffs...]}; pi is optional"""
        v = self.obj(value, doc, "basis")
        space = self.valid_space(self.field(v, "space", doc, "basis"), doc)
        items = self.field(v, "basis", doc, "basis")
        if not isinstance(items, list):
            self.fail(doc, "basis must be a list", "basis")
        basis = [self.coeffs(b, space, doc, "basis[%d]" % i) for i, b in enumerate(items)]
        pi = None
        if "pi" in v:
            if not isinstance(v["pi"], list):
                self.fail(doc, "pi must be a list", "pi")
            pi = [self.coeffs(b, space, doc, "pi[%d]" % i) for i, b in enumerate(v["pi"])]
        return space, basis, pi


def parse_pairs(text: str) -> list[tuple[str, str]]:
    """Split "a:b,c:d"; a label may contain ':' except in its last position"""
    out = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        if ":" not in part:
            raise ValueError("Expected label:value, got %r" % part)
        k, v = part.rsplit(":", 1)
        out.append((k.strip(), v.strip()))
    return out


def parse_coeffs(text: str, space: MetricSpace) -> FreeVector:
    return FreeVector.from_labels(
        space, {k: parse_rational(v) for k, v in parse_pairs(text)}
    )


def encode_space(space: MetricSpace) -> dict[str, ty.Any]:
    return {
        "points": list(space.points),
        "base": space.base,
        "dist": [[format_rational(v) for v in row] for row in space.dist],
    }


def encode_coeffs(v: FreeVector) -> dict[str, ty.Any]:
    return {label: format_rational(c) for label, c in v.to_labels().items()}


def encode_function(f: LipFunction) -> dict[str, ty.Any]:
    return {
        "space": encode_space(f.space),
        "values": [format_rational(v) for v in f.values],
    }


def encode_table(space: MetricSpace, table: Mapping[int, FreeVector]) -> dict[str, ty.Any]:
    return {space.points[x]: encode_coeffs(table[x]) for x in sorted(table)}


def encode_witness(t: LinearWitness) -> dict[str, ty.Any]:
    return {
        "source": encode_space(t.source),
        "target": encode_space(t.target),
        "images": encode_table(t.source, t.image_table()),
    }


def dumps(value: ty.Any) -> str:
    return json.dumps(value, indent=2, ensure_ascii=False) + "\n"


def read_input(path: str) -> Parser:
    """A parser over the file at path, '-' meaning standard input"""
    documents = Documents()
    try:
        if path == "-":
            documents.add_root("<stdin>", sys.stdin.read())
        else:
            documents.read_root(path)
    except OSError as err:
        raise ParseError(path, err.strerror or str(err), "input") from None
    return Parser(documents)
