"""Structured, totally ordered cell labels.

A label is a nested tuple whose head is a one-letter kind:

    ("c", v)        coordinate; v is twice the geometric value, so the
                    integer cell i stores 2i and the half-integer cell
                    i+1/2 stores 2i+1, and +-1/2 arithmetic stays integral
    ("a", name)     named atom
    ("g", k)        summand / level tag
    ("t", (l, ...)) tuple of labels

Kinds compare by their letter and payloads compare within a kind, so
ordinary tuple comparison is a stable total order.  Out-of-range
coordinates are not representable as zero here; instead, construction
code treats a failed basis lookup as the zero vector.
"""

from __future__ import annotations

from typing import Iterable, Union

Label = tuple

_KINDS = ("c", "a", "g", "t")


def cell(i: int) -> Label:
    """Integer coordinate cell ``|i>``."""
    return ("c", 2 * i)


def half(i: int) -> Label:
    """Half-integer cell ``|i^+>`` sitting at i + 1/2."""
    return ("c", 2 * i + 1)


def atom(name: str) -> Label:
    return ("a", str(name))


def tag(k: int) -> Label:
    return ("g", int(k))


def tup(*labels: Label) -> Label:
    return ("t", tuple(labels))


def pair(a: Label, b: Label) -> Label:
    return tup(a, b)


def tagged(label: Label, k: int) -> Label:
    """``|label; k>`` -- a summand-tagged basis element."""
    return tup(label, tag(k))


def is_coord(label: Label) -> bool:
    return label[0] == "c"


def is_half(label: Label) -> bool:
    return label[0] == "c" and label[1] % 2 == 1


def is_int_cell(label: Label) -> bool:
    return label[0] == "c" and label[1] % 2 == 0


def coord_int(label: Label) -> int:
    """The integer i of a cell ``|i>``; rejects half-integer cells."""
    if not is_int_cell(label):
        raise ValueError(f"not an integer cell: {label_str(label)}")
    return label[1] // 2


def half_base(label: Label) -> int:
    """The integer i of a half cell ``|i^+>``."""
    if not is_half(label):
        raise ValueError(f"not a half-integer cell: {label_str(label)}")
    return label[1] // 2


def shift(label: Label, half_steps: int) -> Label:
    """Move a coordinate cell by a multiple of 1/2."""
    if label[0] != "c":
        raise ValueError(f"cannot shift non-coordinate label {label_str(label)}")
    return ("c", label[1] + half_steps)


def shift_cyclic(label: Label, half_steps: int, length: int) -> Label:
    """Shift on the cyclic line with cells 1..L and halves 1+..L+."""
    if label[0] != "c":
        raise ValueError(f"cannot shift non-coordinate label {label_str(label)}")
    v = (label[1] + half_steps - 2) % (2 * length) + 2
    return ("c", v)


def parts(label: Label) -> tuple[Label, ...]:
    if label[0] != "t":
        raise ValueError(f"not a tuple label: {label_str(label)}")
    return label[1]


def label_str(label: Label) -> str:
    """Compact printable form; round-trips through :func:`parse_label`."""
    kind, payload = label
    if kind == "c":
        return f"{payload // 2}+" if payload % 2 else f"{payload // 2}"
    if kind == "a":
        return f"@{payload}"
    if kind == "g":
        return f"#{payload}"
    if kind == "t":
        return "(" + ",".join(label_str(p) for p in payload) + ")"
    raise ValueError(f"unknown label kind {kind!r}")


def parse_label(text: str) -> Label:
    label, rest = _parse(text)
    if rest:
        raise ValueError(f"trailing characters {rest!r} in label {text!r}")
    return label


def _parse(text: str) -> tuple[Label, str]:
    if not text:
        raise ValueError("empty label")
    if text[0] == "(":
        items = []
        rest = text[1:]
        if rest.startswith(")"):
            return ("t", ()), rest[1:]
        while True:
            item, rest = _parse(rest)
            items.append(item)
            if rest.startswith(","):
                rest = rest[1:]
                continue
            if rest.startswith(")"):
                return ("t", tuple(items)), rest[1:]
            raise ValueError(f"unterminated tuple near {rest!r}")
    if text[0] == "@":
        end = _scan(text, 1)
        return ("a", text[1:end]), text[end:]
    if text[0] == "#":
        end = _scan(text, 1)
        return ("g", int(text[1:end])), text[end:]
    end = _scan(text, 0)
    body = text[:end]
    if body.endswith("+"):
        return ("c", 2 * int(body[:-1]) + 1), text[end:]
    return ("c", 2 * int(body)), text[end:]


def _scan(text: str, start: int) -> int:
    i = start
    while i < len(text) and text[i] not in ",()":
        i += 1
    return i


def check_labels(labels: Iterable[Label]) -> None:
    """Uniqueness guard used by complex constructors."""
    seen = set()
    for lab in labels:
        if lab in seen:
            raise ValueError(f"duplicate label {label_str(lab)}")
        seen.add(lab)
