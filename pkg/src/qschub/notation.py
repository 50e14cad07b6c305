"""Text notation for the labels the CLI speaks.

Reduced words are "s1 s2 s3" (or bare indices "1 2 3"); one-line signed
windows are "(2,-1,3)"; shapes are "(3,1 // 2)"; box partitions are "[1,0]";
roots print as integer combinations "r1+2*r2" of the simple roots.
"""

from __future__ import annotations

import re

from .rootsystem import RootSystem
from .shapes import Shape
from .weyl import WeylElement, from_word, reduced_word

__all__ = [
    "parse_word",
    "format_word",
    "parse_window",
    "format_window",
    "element_from_text",
    "format_element",
    "barred_text",
    "parse_shape",
    "format_shape",
    "parse_partition",
    "format_partition",
    "format_root",
    "parse_root",
]


def parse_word(text: str) -> list[int]:
    """A reduced-word string into simple-reflection indices; '' is the identity."""
    toks = text.replace(",", " ").split()
    out = []
    for tok in toks:
        m = re.fullmatch(r"s?(\d+)", tok)
        if not m:
            raise ValueError(f"bad word token {tok!r}")
        out.append(int(m.group(1)))
    return out


def format_word(word) -> str:
    return " ".join(f"s{i}" for i in word) if word else "e"


def parse_window(text: str) -> tuple[int, ...]:
    toks = text.strip().strip("()").replace(",", " ").split()
    return tuple(int(t) for t in toks)


def format_window(window) -> str:
    return "(" + ",".join(str(x) for x in window) + ")"


def element_from_text(lie_type: str, rank: int, text: str) -> WeylElement:
    """An element from either a reduced word or a one-line window."""
    text = text.strip()
    if text.startswith("("):
        return WeylElement(lie_type, rank, parse_window(text))
    return from_word(lie_type, rank, parse_word(text))


def format_element(w: WeylElement) -> str:
    return format_word(reduced_word(w))


def barred_text(w: WeylElement) -> str:
    """One-line form with bars for the signs, e.g. '2 3̄ 1'."""
    return " ".join(f"{abs(x)}̄" if x < 0 else str(x) for x in w.window)


def parse_shape(n: int, k: int, text: str) -> Shape:
    body = text.strip().strip("()")
    if "//" not in body:
        raise ValueError(f"shape {text!r} needs a '//' separator")
    t, b = body.split("//")
    top = tuple(int(x) for x in t.replace(",", " ").split())
    bottom = tuple(int(x) for x in b.replace(",", " ").split())
    return Shape(n, k, top, bottom)


def format_shape(sh: Shape) -> str:
    return sh.text()


def parse_partition(text: str) -> tuple[int, ...]:
    return tuple(int(x) for x in text.strip().strip("[]").replace(",", " ").split())


def format_partition(a) -> str:
    return "[" + ",".join(str(x) for x in a) + "]"


def format_root(rs: RootSystem, gamma) -> str:
    """'a1*r1+a2*r2' form in simple-root coordinates."""
    coords = rs.root_coordinates(tuple(gamma))
    parts = []
    for i, c in enumerate(coords, start=1):
        if c == 0:
            continue
        parts.append(f"r{i}" if c == 1 else f"{c}*r{i}")
    return "+".join(parts) if parts else "0"


def parse_root(rs: RootSystem, text: str):
    """Inverse of :func:`format_root`; returns ambient coordinates."""
    vec = [0] * rs.ambient_dim
    text = text.strip()
    if text == "0":
        return tuple(vec)
    for term in text.split("+"):
        term = term.strip()
        m = re.fullmatch(r"(?:(-?\d+)\*)?r(\d+)", term)
        if not m:
            raise ValueError(f"bad root term {term!r}")
        c = int(m.group(1)) if m.group(1) else 1
        alpha = rs.simple_root(int(m.group(2)))
        vec = [a + c * b for a, b in zip(vec, alpha)]
    return tuple(vec)
