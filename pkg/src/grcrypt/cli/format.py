"""GRC1 text format: serialize and parse elements, matrices, and keys.

The format is line oriented and decimal so that desk-scale objects can
be checked by hand.  A file starts with the header line "GRC1", then
any of:

    group cyclic 8
    field 3
    role public
    note <key> <free text>
    elem <name> c0 c1 ...
    matrix <name> rows cols     (followed by `rows` lines of `cols` ints)

Coefficients appear in the group's listing order.  Parsing is strict;
any malformed line raises ParseError carrying its 1-based line number.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..errors import ParseError
from ..ffield import FieldMatrix, FieldVector
from ..groupring import GroupRingElement, GroupSpec, group_from_descriptor
from ..idempotents import cyclic_idempotent_set
from ..protocols.base import Transcript
from ..protocols.keyexchange import SharedKey
from ..protocols.publickey import PrivateKey, PublicKey

Entry = FieldVector | FieldMatrix


@dataclass
class KeyFile:
    """In-memory form of one GRC1 file."""

    p: int
    group: GroupSpec | None = None
    role: str = ""
    notes: dict[str, str] = field(default_factory=dict)
    entries: dict[str, Entry] = field(default_factory=dict)

    def element(self, name: str) -> GroupRingElement:
        if self.group is None:
            raise ParseError(1, "file has no group line; cannot build an element")
        return GroupRingElement(self.group, self.entries[name])

    def vector(self, name: str) -> FieldVector:
        entry = self.entries[name]
        if not isinstance(entry, FieldVector):
            raise KeyError(f"{name} is a matrix entry")
        return entry

    def matrix(self, name: str) -> FieldMatrix:
        entry = self.entries[name]
        if not isinstance(entry, FieldMatrix):
            raise KeyError(f"{name} is a vector entry")
        return entry


def serialize(kf: KeyFile) -> str:
    lines = ["GRC1"]
    if kf.group is not None:
        lines.append(f"group {kf.group.describe()}")
    lines.append(f"field {kf.p}")
    if kf.role:
        lines.append(f"role {kf.role}")
    for key, value in kf.notes.items():
        lines.append(f"note {key} {value}")
    for name, entry in kf.entries.items():
        if isinstance(entry, FieldVector):
            body = " ".join(str(int(c)) for c in entry.values)
            lines.append(f"elem {name} {body}")
        else:
            lines.append(f"matrix {name} {entry.rows} {entry.cols}")
            for row in entry.values:
                lines.append(" ".join(str(int(c)) for c in row))
    return "\n".join(lines) + "\n"


def _int_token(token: str, lineno: int, what: str) -> int:
    try:
        return int(token)
    except ValueError:
        raise ParseError(lineno, f"{what} is not an integer: {token!r}") from None


def _coeff_row(tokens: list[str], p: int, lineno: int) -> np.ndarray:
    out = np.empty(len(tokens), dtype=np.int64)
    for i, tok in enumerate(tokens):
        c = _int_token(tok, lineno, "coefficient")
        if not 0 <= c < p:
            raise ParseError(lineno, f"coefficient {c} outside [0, {p})")
        out[i] = c
    return out


def parse(text: str) -> KeyFile:
    lines = text.splitlines()
    index = 0

    def next_line() -> tuple[int, str] | None:
        nonlocal index
        while index < len(lines):
            index += 1
            stripped = lines[index - 1].strip()
            if stripped and not stripped.startswith("#"):
                return index, stripped
        return None

    first = next_line()
    if first is None or first[1] != "GRC1":
        raise ParseError(first[0] if first else 1, 'expected header line "GRC1"')

    group: GroupSpec | None = None
    p: int | None = None
    role = ""
    notes: dict[str, str] = {}
    entries: dict[str, Entry] = {}

    while (item := next_line()) is not None:
        lineno, line = item
        tokens = line.split()
        directive = tokens[0]

        if directive == "group":
            if group is not None:
                raise ParseError(lineno, "duplicate group line")
            try:
                group = group_from_descriptor(" ".join(tokens[1:]))
            except Exception as exc:
                raise ParseError(lineno, f"bad group descriptor: {exc}") from None

        elif directive == "field":
            if p is not None:
                raise ParseError(lineno, "duplicate field line")
            if len(tokens) != 2:
                raise ParseError(lineno, "field line needs exactly one modulus")
            p = _int_token(tokens[1], lineno, "modulus")
            if p < 2:
                raise ParseError(lineno, f"modulus {p} is smaller than 2")

        elif directive == "role":
            if len(tokens) != 2:
                raise ParseError(lineno, "role line needs exactly one word")
            role = tokens[1]

        elif directive == "note":
            if len(tokens) < 3:
                raise ParseError(lineno, "note line needs a key and a value")
            key, value = line.split(None, 2)[1:]
            notes[key] = value

        elif directive == "elem":
            if p is None:
                raise ParseError(lineno, "elem line before field line")
            if len(tokens) < 3:
                raise ParseError(lineno, "elem line needs a name and coefficients")
            name = tokens[1]
            if name in entries:
                raise ParseError(lineno, f"duplicate entry name {name!r}")
            entries[name] = FieldVector(_coeff_row(tokens[2:], p, lineno), p)

        elif directive == "matrix":
            if p is None:
                raise ParseError(lineno, "matrix line before field line")
            if len(tokens) != 4:
                raise ParseError(lineno, "matrix line needs a name, rows, cols")
            name = tokens[1]
            if name in entries:
                raise ParseError(lineno, f"duplicate entry name {name!r}")
            rows = _int_token(tokens[2], lineno, "row count")
            cols = _int_token(tokens[3], lineno, "column count")
            if rows < 1 or cols < 1:
                raise ParseError(lineno, f"matrix shape {rows}x{cols} is empty")
            data = np.empty((rows, cols), dtype=np.int64)
            for i in range(rows):
                item = next_line()
                if item is None:
                    raise ParseError(
                        len(lines), f"matrix {name!r} is missing row {i + 1} of {rows}"
                    )
                row_lineno, row_line = item
                row_tokens = row_line.split()
                if len(row_tokens) != cols:
                    raise ParseError(
                        row_lineno,
                        f"matrix row has {len(row_tokens)} entries, expected {cols}",
                    )
                data[i] = _coeff_row(row_tokens, p, row_lineno)
            entries[name] = FieldMatrix(data, p)

        else:
            raise ParseError(lineno, f"unknown directive {directive!r}")

    if p is None:
        raise ParseError(len(lines) or 1, "file has no field line")
    if group is not None:
        for name, entry in entries.items():
            width = len(entry) if isinstance(entry, FieldVector) else entry.cols
            if width != group.order:
                raise ParseError(
                    1, f"entry {name!r} has width {width}, group order is {group.order}"
                )
    return KeyFile(p=p, group=group, role=role, notes=notes, entries=entries)


# --- object adapters -----------------------------------------------------


def keyfile_for_element(name: str, x: GroupRingElement, role: str = "element") -> KeyFile:
    return KeyFile(p=x.p, group=x.group, role=role, entries={name: x.coeffs})


def keyfile_from_public(pk: PublicKey) -> KeyFile:
    return KeyFile(
        p=pk.p,
        group=pk.group,
        role="public",
        entries={"pk0": pk.components[0], "pk1": pk.components[1]},
    )


def public_from_keyfile(kf: KeyFile) -> PublicKey:
    if kf.group is None:
        raise ParseError(1, "public key file has no group line")
    return PublicKey(kf.group, kf.p, (kf.vector("pk0"), kf.vector("pk1")))


def keyfile_from_private(sk: PrivateKey) -> KeyFile:
    p = sk.public.p
    return KeyFile(
        p=p,
        group=sk.public.group,
        role="private",
        entries={
            "xweights": FieldVector(sk.x_weights, p),
            "yweights": FieldVector(sk.y_weights, p),
            "maska1": sk.masks[0].coeffs,
            "maska2": sk.masks[1].coeffs,
            "pk0": sk.public.components[0],
            "pk1": sk.public.components[1],
        },
    )


def private_from_keyfile(kf: KeyFile) -> PrivateKey:
    public = public_from_keyfile(kf)
    idem = cyclic_idempotent_set(public.group.order, kf.p)
    return PrivateKey(
        idempotents=idem,
        x_weights=kf.vector("xweights").values.copy(),
        y_weights=kf.vector("yweights").values.copy(),
        masks=(kf.element("maska1"), kf.element("maska2")),
        public=public,
    )


def keyfile_from_shared(key: SharedKey) -> KeyFile:
    return KeyFile(
        p=key.element.p,
        group=key.element.group,
        role="shared",
        entries={"key": key.element.coeffs, "keyinv": key.inverse_element.coeffs},
    )


def shared_from_keyfile(kf: KeyFile) -> SharedKey:
    return SharedKey(kf.element("key"), kf.element("keyinv"))


def serialize_transcript(t: Transcript) -> str:
    """One GRC1 file for a whole run; messages keep their wire order.

    Entry names are tag:sender, with a :c suffix on compressed
    (first-row) payloads.
    """
    notes = {"scheme": t.scheme}
    if t.seed is not None:
        notes["seed"] = str(t.seed)
    if t.verdict:
        notes["verdict"] = t.verdict
    group = None
    descriptor = t.params.get("group")
    if descriptor is not None:
        group = group_from_descriptor(descriptor)
    p = t.params.get("p")
    if p is None:
        if not t.messages:
            raise ValueError("transcript carries no modulus and no messages")
        p = t.messages[0].payload.p
    entries: dict[str, Entry] = {}
    for msg in t.messages:
        name = f"{msg.tag}:{msg.sender}" + (":c" if msg.compressed else "")
        base, copy = name, 1
        while name in entries:
            copy += 1
            name = f"{base}:{copy}"
        entries[name] = msg.payload
    return serialize(
        KeyFile(p=int(p), group=group, role="transcript", notes=notes, entries=entries)
    )
