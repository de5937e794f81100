"""Cycles, chords, the crossing relation, and instance I/O.

Vertices of the cycle C_n are the integers 1..n.  A chord is stored with its
smaller endpoint first, so the crossing test reduces to a comparison of four
integers.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping

from .errors import (
    CycleEdgeError,
    FormatError,
    InfeasibleCandidateSetError,
    LoopError,
)


def wrap(v: int, n: int) -> int:
    """Map any integer onto the cycle labels 1..n (so 0 -> n, n+1 -> 1)."""
    return (v - 1) % n + 1


def cyclically_adjacent(u: int, v: int, n: int) -> bool:
    return wrap(u + 1, n) == v or wrap(v + 1, n) == u


@dataclass(frozen=True, order=True)
class Chord:
    a: int
    b: int

    def __post_init__(self):
        if self.a == self.b:
            raise LoopError(f"chord endpoints coincide: {self.a}")
        if self.a > self.b:
            a, b = self.b, self.a
            object.__setattr__(self, "a", a)
            object.__setattr__(self, "b", b)

    @property
    def ends(self) -> tuple[int, int]:
        return (self.a, self.b)

    def __iter__(self) -> Iterator[int]:
        yield self.a
        yield self.b

    def __repr__(self) -> str:
        return f"Chord({self.a},{self.b})"


def make_chord(a: int, b: int, n: int) -> Chord:
    """Build a normalized chord of C_n, rejecting loops and cycle edges."""
    if not (1 <= a <= n and 1 <= b <= n):
        raise CycleEdgeError(f"endpoints {a},{b} outside 1..{n}")
    if a == b:
        raise LoopError(f"chord endpoints coincide: {a}")
    if cyclically_adjacent(a, b, n):
        raise CycleEdgeError(f"{a} and {b} are consecutive on C_{n}")
    return Chord(a, b)


def crosses(x: Chord, y: Chord) -> bool:
    a, b = x.a, x.b
    c, d = y.a, y.b
    return (a < c < b < d) or (c < a < d < b)


def sides(c: Chord, n: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """The two open sides of ``c``: the inner interval (a, b) and the wrap-around one."""
    inner = tuple(range(c.a + 1, c.b))
    outer = tuple(range(c.b + 1, n + 1)) + tuple(range(1, c.a))
    return inner, outer


def all_chords(n: int) -> list[Chord]:
    """Every chord of C_n in lexicographic order; there are n(n-3)/2 of them."""
    return [Chord(a, b) for a in range(1, n + 1) for b in range(a + 2, n + 1)
            if not (a == 1 and b == n)]


def vertices_of(links: Iterable[Chord]) -> set[int]:
    out: set[int] = set()
    for e in links:
        out.add(e.a)
        out.add(e.b)
    return out


@dataclass(frozen=True)
class LinkSet:
    """An immutable, lexicographically ordered set of links."""

    members: tuple[Chord, ...] = ()
    incidence: Mapping[int, frozenset[Chord]] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        ordered = tuple(sorted(set(self.members)))
        object.__setattr__(self, "members", ordered)
        inc: dict[int, set[Chord]] = {}
        for e in ordered:
            inc.setdefault(e.a, set()).add(e)
            inc.setdefault(e.b, set()).add(e)
        object.__setattr__(self, "incidence", {v: frozenset(s) for v, s in inc.items()})

    @classmethod
    def of(cls, links: Iterable[Chord]) -> "LinkSet":
        if isinstance(links, LinkSet):
            return links
        return cls(tuple(links))

    @property
    def vertices(self) -> frozenset[int]:
        return frozenset(self.incidence)

    def __iter__(self) -> Iterator[Chord]:
        return iter(self.members)

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, e) -> bool:
        return e in self.incidence.get(getattr(e, "a", None), ())

    def __or__(self, other: Iterable[Chord]) -> "LinkSet":
        return LinkSet(self.members + tuple(other))

    def __sub__(self, other: Iterable[Chord]) -> "LinkSet":
        drop = set(other)
        return LinkSet(tuple(e for e in self.members if e not in drop))

    def __repr__(self) -> str:
        return "LinkSet(" + ", ".join(f"{e.a}-{e.b}" for e in self.members) + ")"


@dataclass(frozen=True)
class Instance:
    """A cycle VCA instance: the cycle size and the candidate link set S.

    Construction validates the chords and, unless ``check_feasible`` is
    false, that S itself 3-connects the cycle.
    """

    n: int
    links: tuple[Chord, ...]
    check_feasible: bool = field(default=True, repr=False, compare=False)

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 4:
            raise FormatError(f"cycle size must be an integer >= 4, got {self.n!r}")
        seen: set[Chord] = set()
        for e in self.links:
            make_chord(e.a, e.b, self.n)
            if e in seen:
                raise FormatError(f"duplicate link {e.a} {e.b}")
            seen.add(e)
        object.__setattr__(self, "links", tuple(sorted(self.links)))
        if self.check_feasible:
            from .feasibility import is_feasible_components

            report = is_feasible_components(self.n, self.links)
            if not report.feasible:
                raise InfeasibleCandidateSetError(
                    f"candidate links do not 3-connect C_{self.n}; "
                    f"witness {report.witness!r}")

    @property
    def linkset(self) -> LinkSet:
        return LinkSet(self.links)

    def __len__(self) -> int:
        return len(self.links)


def _chords_from_pairs(pairs, n: int) -> list[Chord]:
    out = []
    for p in pairs:
        try:
            a, b = (int(x) for x in p)
        except (TypeError, ValueError) as exc:
            raise FormatError(f"bad link entry {p!r}") from exc
        out.append(make_chord(a, b, n))
    return out


def parse_instance(data: bytes | str) -> Instance:
    """Read the JSON (``{"n": .., "links": [[a, b], ..]}``) or plain-text format."""
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise FormatError("instance is not valid UTF-8") from exc
    text = data.strip()
    if not text:
        raise FormatError("empty instance")
    if text.startswith("{"):
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise FormatError(f"invalid JSON: {exc}") from exc
        if not isinstance(obj, dict) or "n" not in obj or "links" not in obj:
            raise FormatError('JSON instance needs keys "n" and "links"')
        n = obj["n"]
        if not isinstance(n, int) or isinstance(n, bool):
            raise FormatError(f"n must be an integer, got {n!r}")
        if not isinstance(obj["links"], list):
            raise FormatError('"links" must be a list of pairs')
        pairs = obj["links"]
        for p in pairs:
            if not isinstance(p, list) or len(p) != 2:
                raise FormatError(f"bad link entry {p!r}")
    else:
        lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
        lines = [ln for ln in lines if ln]
        try:
            n = int(lines[0])
        except ValueError as exc:
            raise FormatError(f"first line must be the cycle size, got {lines[0]!r}") from exc
        pairs = []
        for ln in lines[1:]:
            parts = ln.split()
            if len(parts) != 2:
                raise FormatError(f"expected 'a b', got {ln!r}")
            pairs.append(parts)
    if n < 4:
        raise FormatError(f"cycle size must be >= 4, got {n}")
    try:
        chords = _chords_from_pairs(pairs, n)
    except (LoopError, CycleEdgeError) as exc:
        raise FormatError(str(exc)) from exc
    return Instance(n, tuple(chords))


def serialize_instance(inst: Instance, fmt: str = "json") -> bytes:
    links = sorted(inst.links)
    if fmt == "json":
        payload = {"n": inst.n, "links": [[e.a, e.b] for e in links]}
        return (json.dumps(payload, separators=(",", ":")) + "\n").encode()
    if fmt == "text":
        rows = [str(inst.n)] + [f"{e.a} {e.b}" for e in links]
        return ("\n".join(rows) + "\n").encode()
    raise ValueError(f"unknown instance format {fmt!r}")
