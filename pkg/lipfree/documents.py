import os
import typing as ty


class Document(ty.NamedTuple):
    id: int
    name: str
    path: str
    content: str


class Documents:
    """Input files by id and by absolute path; a space referenced by name from
    several files is read once"""

    by_path: dict[str, Document]
    by_id: list[Document]
    root: Document

    def __init__(self) -> None:
        self.by_path = {}
        self.by_id = []

    def read_root(self, path: str) -> Document:
        with open(path) as f:
            return self.add_root(path, f.read())

    def add_root(self, path: str, data: str) -> Document:
        self.root = self._add(path, data)
        return self.root

    def _add(self, path: str, data: str) -> Document:
        name = os.path.splitext(os.path.basename(path))[0]
        doc = Document(len(self.by_id), name, path, data)
        self.by_path[os.path.abspath(path)] = doc
        self.by_id.append(doc)
        return doc

    def read(self, ref: str, relative_to: Document) -> Document | None:
        """Resolve ref against the directory of the referring document"""
        path = os.path.join(os.path.dirname(relative_to.path), ref)
        key = os.path.abspath(path)
        if key in self.by_path:
            return self.by_path[key]
        if not os.path.isfile(path):
            return None
        with open(path) as f:
            return self._add(path, f.read())
