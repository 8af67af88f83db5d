"""Dart-based maps on the sphere.

A map on ``2E`` darts is a pair of permutations: ``sigma`` sends a dart to the
next dart counterclockwise around its vertex and ``alpha`` sends a dart to
the other end of its edge. Vertices are the cycles of ``sigma``, edges the
cycles of ``alpha`` and faces the cycles of ``phi = sigma o alpha`` (apply
``alpha`` first). With this convention the face of a dart is the face on its
right when walking away from its vertex.

The map with no darts is the single isolated vertex: ``V = 1, E = 0, F = 1``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import Disconnected, NonSphericalGenus, NotInvolution, NotPermutation, ParseError


def _as_int_array(values) -> np.ndarray:
    arr = np.array(values, dtype=np.int64).reshape(-1)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, order=True)
class CanonicalForm:
    """Isomorphism-invariant code of a map; compare with ``==``."""

    code: bytes

    def hex(self) -> str:
        return self.code.hex()


class EmbeddedMap:
    """Immutable connected map on the sphere.

    ``labels`` is a tuple of ``(kind, dart, text)`` with ``kind`` in ``"v"``
    (the vertex of ``dart``) or ``"f"`` (the face of ``dart``).
    """

    __slots__ = ("sigma", "alpha", "labels", "_vertex_of", "_nv", "_face_of", "_nf", "_sigma_inv")

    def __init__(self, sigma, alpha, labels=(), check=True):
        self.sigma = _as_int_array(sigma)
        self.alpha = _as_int_array(alpha)
        self.labels = tuple((k, int(d), str(t)) for k, d, t in labels)
        self._vertex_of = None
        self._face_of = None
        self._sigma_inv = None
        if check:
            self._validate()

    # -- validation -------------------------------------------------------
    def _validate(self):
        n = self.sigma.shape[0]
        if self.alpha.shape[0] != n:
            raise NotPermutation(f"sigma has {n} darts but alpha has {self.alpha.shape[0]}")
        if n % 2:
            raise NotInvolution(f"odd number of darts ({n})")
        if n and (self.sigma.min() < 0 or self.sigma.max() >= n or np.unique(self.sigma).shape[0] != n):
            raise NotPermutation("sigma is not a bijection on darts")
        if n and (self.alpha.min() < 0 or self.alpha.max() >= n):
            raise NotInvolution("alpha points outside the dart range")
        idx = np.arange(n)
        if n and (np.any(self.alpha[self.alpha] != idx) or np.any(self.alpha == idx)):
            raise NotInvolution("alpha is not a fixed-point-free involution")
        for kind, d, _ in self.labels:
            if kind not in ("v", "f") or not 0 <= d < max(n, 1):
                raise ParseError(f"bad label ({kind}, {d})")
        if n == 0:
            return
        if not _connected(self.sigma, self.alpha):
            raise Disconnected("map is not connected")
        chi = self.num_vertices - self.num_edges + self.num_faces
        if chi != 2:
            raise NonSphericalGenus(f"V - E + F = {chi}, expected 2")

    # -- orbit tables -----------------------------------------------------
    @property
    def num_darts(self) -> int:
        return int(self.sigma.shape[0])

    @property
    def num_edges(self) -> int:
        return self.num_darts // 2

    @property
    def vertex_of(self) -> np.ndarray:
        if self._vertex_of is None:
            self._vertex_of, self._nv = _kernels.orbit_labels(self.sigma)
        return self._vertex_of

    @property
    def num_vertices(self) -> int:
        if self.num_darts == 0:
            return 1
        self.vertex_of
        return int(self._nv)

    @property
    def phi(self) -> np.ndarray:
        return self.sigma[self.alpha]

    @property
    def face_of(self) -> np.ndarray:
        if self._face_of is None:
            self._face_of, self._nf = _kernels.orbit_labels(self.phi)
        return self._face_of

    @property
    def num_faces(self) -> int:
        if self.num_darts == 0:
            return 1
        self.face_of
        return int(self._nf)

    @property
    def sigma_inv(self) -> np.ndarray:
        if self._sigma_inv is None:
            inv = np.empty_like(self.sigma)
            inv[self.sigma] = np.arange(self.num_darts)
            self._sigma_inv = inv
        return self._sigma_inv

    def vertices(self) -> list[list[int]]:
        return _orbits(self.sigma)

    def edges(self) -> list[list[int]]:
        return _orbits(self.alpha)

    def faces(self) -> list[list[int]]:
        return _orbits(self.phi)

    def degree(self, dart: int) -> int:
        """Degree of the vertex of ``dart``."""
        return int(np.count_nonzero(self.vertex_of == self.vertex_of[dart]))

    # -- transformations ----------------------------------------------------
    def mirror(self) -> "EmbeddedMap":
        """Reflection: every rotation reversed.

        The face right of ``d`` becomes the face right of ``alpha(d)``, so
        face labels move along ``alpha``.
        """
        labels = tuple((k, int(self.alpha[d]) if k == "f" else d, t) for k, d, t in self.labels)
        return EmbeddedMap(self.sigma_inv.copy(), self.alpha.copy(), labels, check=False)

    def relabel(self, perm) -> "EmbeddedMap":
        """Rename dart ``d`` to ``perm[d]``."""
        perm = np.asarray(perm, dtype=np.int64)
        n = self.num_darts
        sigma = np.empty(n, dtype=np.int64)
        alpha = np.empty(n, dtype=np.int64)
        sigma[perm] = perm[self.sigma]
        alpha[perm] = perm[self.alpha]
        labels = tuple((k, int(perm[d]), t) for k, d, t in self.labels)
        return EmbeddedMap(sigma, alpha, labels, check=False)

    def with_labels(self, labels) -> "EmbeddedMap":
        m = EmbeddedMap(self.sigma, self.alpha, labels, check=False)
        m._vertex_of, m._face_of = self._vertex_of, self._face_of
        if self._vertex_of is not None:
            m._nv = self._nv
        if self._face_of is not None:
            m._nf = self._nf
        return m

    def dart_labels(self, mirrored=False) -> list[tuple[str, str]]:
        """Per-dart ``(vertex text, face text)`` pairs."""
        n = self.num_darts
        vtext = {}
        ftext = {}
        for kind, d, t in self.labels:
            if kind == "v":
                vtext[int(self.vertex_of[d])] = t
            else:
                dd = int(self.alpha[d]) if mirrored else d
                ftext[dd] = t
        face_of = _kernels.orbit_labels(self.sigma_inv[self.alpha])[0] if mirrored else self.face_of
        ftext_by_face = {int(face_of[d]): t for d, t in ftext.items()}
        return [(vtext.get(int(self.vertex_of[d]), ""), ftext_by_face.get(int(face_of[d]), "")) for d in range(n)]

    def __eq__(self, other):
        if not isinstance(other, EmbeddedMap):
            return NotImplemented
        return (
            np.array_equal(self.sigma, other.sigma)
            and np.array_equal(self.alpha, other.alpha)
            and sorted(self.labels) == sorted(other.labels)
        )

    def __hash__(self):
        return hash((self.sigma.tobytes(), self.alpha.tobytes(), tuple(sorted(self.labels))))

    def __repr__(self):
        return f"EmbeddedMap(V={self.num_vertices}, E={self.num_edges}, F={self.num_faces})"


def _orbits(perm: np.ndarray) -> list[list[int]]:
    seen = np.zeros(perm.shape[0], dtype=bool)
    out = []
    for start in range(perm.shape[0]):
        if seen[start]:
            continue
        cyc = []
        d = start
        while not seen[d]:
            seen[d] = True
            cyc.append(d)
            d = int(perm[d])
        out.append(cyc)
    return out


def _connected(sigma, alpha) -> bool:
    n = sigma.shape[0]
    seen = np.zeros(n, dtype=bool)
    stack = [0]
    seen[0] = True
    count = 1
    while stack:
        d = stack.pop()
        for e in (int(sigma[d]), int(alpha[d])):
            if not seen[e]:
                seen[e] = True
                count += 1
                stack.append(e)
    return count == n


def build_map(sigma, alpha, labels=()) -> EmbeddedMap:
    """Validated map from a rotation permutation and an edge involution."""
    return EmbeddedMap(sigma, alpha, labels, check=True)


def faces(m: EmbeddedMap) -> list[list[int]]:
    return m.faces()


# -- canonical forms ----------------------------------------------------------


def _label_ints(texts: list) -> np.ndarray:
    vocab = {t: i for i, t in enumerate(sorted(set(texts)))}
    return np.array([vocab[t] for t in texts], dtype=np.int64)


def _code(sigma, alpha, labels) -> np.ndarray:
    if sigma.shape[0] == 0:
        return np.zeros(0, dtype=np.int64)
    return _kernels.canonical_code(sigma, alpha, labels)


def canonical_code_arrays(m: EmbeddedMap, dart_labels=None, chiral=False) -> bytes:
    """Canonical code with explicit integer dart labels.

    ``dart_labels`` may be a pair ``(labels, mirrored_labels)`` of int arrays
    where ``mirrored_labels[d]`` is the label dart ``d`` carries in the mirror
    image; face-attached labels differ between the two.
    """
    n = m.num_darts
    if dart_labels is None:
        lab = lab_m = np.zeros(n, dtype=np.int64)
    else:
        lab, lab_m = dart_labels
    c0 = _code(m.sigma, m.alpha, np.asarray(lab, dtype=np.int64))
    best = c0
    if not chiral and n:
        c1 = _code(m.sigma_inv, m.alpha, np.asarray(lab_m, dtype=np.int64))
        if tuple(c1) < tuple(c0):
            best = c1
    head = np.array([n], dtype=np.int64)
    return np.concatenate([head, best]).astype(">i8").tobytes()


def _text_labels(m: EmbeddedMap):
    if not m.labels:
        z = np.zeros(m.num_darts, dtype=np.int64)
        return z, z, ()
    plain = [f"{v}\x00{f}" for v, f in m.dart_labels()]
    mirr = [f"{v}\x00{f}" for v, f in m.dart_labels(mirrored=True)]
    vocab = {t: i for i, t in enumerate(sorted(set(plain) | set(mirr)))}
    lab = np.array([vocab[t] for t in plain], dtype=np.int64)
    lab_m = np.array([vocab[t] for t in mirr], dtype=np.int64)
    return lab, lab_m, tuple(sorted(vocab))


def canonical_form(m: EmbeddedMap) -> CanonicalForm:
    """Code invariant under dart relabeling and reflection."""
    lab, lab_m, vocab = _text_labels(m)
    code = canonical_code_arrays(m, (lab, lab_m))
    if vocab:
        code += "\x01".join(vocab).encode()
    return CanonicalForm(code)


def canonical_form_chiral(m: EmbeddedMap) -> CanonicalForm:
    """Like :func:`canonical_form` but distinguishes a map from its mirror."""
    lab, lab_m, vocab = _text_labels(m)
    code = canonical_code_arrays(m, (lab, lab_m), chiral=True)
    if vocab:
        code += "\x01".join(vocab).encode()
    return CanonicalForm(code)


def isomorphic(a: EmbeddedMap, b: EmbeddedMap) -> bool:
    return canonical_form(a) == canonical_form(b)


def find_isomorphism(a: EmbeddedMap, b: EmbeddedMap, a_labels=None, b_labels=None):
    """Orientation-preserving dart bijection ``a -> b``, or None.

    Optional integer dart labels must be preserved. Tries every image of
    dart 0, so the cost is quadratic in the number of darts.
    """
    n = a.num_darts
    if n != b.num_darts:
        return None
    if n == 0:
        return np.zeros(0, dtype=np.int64)
    la = np.zeros(n, dtype=np.int64) if a_labels is None else np.asarray(a_labels)
    lb = np.zeros(n, dtype=np.int64) if b_labels is None else np.asarray(b_labels)
    for image in range(n):
        if la[0] != lb[image]:
            continue
        f = np.full(n, -1, dtype=np.int64)
        f[0] = image
        stack = [0]
        ok = True
        while stack and ok:
            d = stack.pop()
            for pa, pb in ((a.sigma, b.sigma), (a.alpha, b.alpha)):
                x, y = int(pa[d]), int(pb[f[d]])
                if f[x] == -1:
                    if la[x] != lb[y]:
                        ok = False
                        break
                    f[x] = y
                    stack.append(x)
                elif f[x] != y:
                    ok = False
                    break
        if ok and len(set(f.tolist())) == n:
            return f
    return None


# -- text format -----------------------------------------------------------------
#
#   darts <2E>
#   alpha <2E integers>
#   sigma <2E integers>
#   label v <dart> <text>
#   label f <dart> <text>
#
# Tokens are whitespace separated and ``#`` starts a comment. Other modules
# extend the format with extra keyword lines; ``parse_sections`` hands those
# back untouched.

_COMMENT = re.compile(r"#.*$")


def serialize(m: EmbeddedMap) -> str:
    lines = [f"darts {m.num_darts}"]
    lines.append(" ".join(["alpha"] + [str(int(x)) for x in m.alpha]))
    lines.append(" ".join(["sigma"] + [str(int(x)) for x in m.sigma]))
    for kind, d, text in m.labels:
        lines.append(f"label {kind} {d} {text}")
    return "\n".join(lines) + "\n"


def parse_sections(text: str, extra=()) -> tuple[EmbeddedMap, dict]:
    """Parse a ``.map`` body; keyword lines listed in ``extra`` are returned.

    The result dict maps each extra keyword to ``(line number, tokens)``.
    """
    darts = None
    arrays = {}
    labels = []
    found = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _COMMENT.sub("", raw).strip()
        if not line:
            continue
        tok = line.split()
        key = tok[0]
        if key == "darts":
            if len(tok) != 2:
                raise ParseError("expected 'darts <count>'", lineno)
            darts = _int(tok[1], lineno)
            if darts < 0 or darts % 2:
                raise ParseError(f"dart count must be even and non-negative, got {darts}", lineno)
        elif key in ("alpha", "sigma"):
            if darts is None:
                raise ParseError(f"'{key}' before 'darts'", lineno)
            vals = [_int(t, lineno) for t in tok[1:]]
            if len(vals) != darts:
                raise ParseError(f"'{key}' has {len(vals)} entries, expected {darts}", lineno)
            arrays[key] = (vals, lineno)
        elif key == "label":
            if len(tok) < 4 or tok[1] not in ("v", "f"):
                raise ParseError("expected 'label v|f <dart> <text>'", lineno)
            d = _int(tok[2], lineno)
            if darts is not None and not 0 <= d < max(darts, 1):
                raise ParseError(f"label dart {d} out of range", lineno)
            labels.append((tok[1], d, " ".join(tok[3:])))
        elif key in extra:
            found[key] = (lineno, tok[1:])
        else:
            raise ParseError(f"unknown keyword '{key}'", lineno)
    if darts is None:
        raise ParseError("missing 'darts' line", 1)
    if darts == 0:
        return EmbeddedMap([], [], labels), found
    for key in ("alpha", "sigma"):
        if key not in arrays:
            raise ParseError(f"missing '{key}' line", 1)
    try:
        m = build_map(arrays["sigma"][0], arrays["alpha"][0], labels)
    except (NotInvolution, NotPermutation) as exc:
        which = "alpha" if isinstance(exc, NotInvolution) else "sigma"
        raise ParseError(str(exc), arrays[which][1]) from exc
    return m, found


def parse(text: str) -> EmbeddedMap:
    return parse_sections(text)[0]


def _int(tok, lineno):
    try:
        return int(tok)
    except ValueError:
        raise ParseError(f"expected an integer, got '{tok}'", lineno) from None
