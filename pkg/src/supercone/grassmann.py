"""Exact arithmetic in the exterior algebra over m anticommuting generators.

A multivector is stored densely as 2^m complex coefficients, one per subset
of generators.  The subset is encoded as a bitmask: bit a-1 set means the
ordered monomial contains theta_a, and the monomial is always the ascending
product theta_{a1} theta_{a2} ... with a1 < a2 < ...  Generators obey

    theta_a theta_b + theta_b theta_a = 0,

so the product of two basis monomials is (up to sign) the monomial of the
symmetric difference of their masks, and vanishes when the masks intersect.
"""
from __future__ import annotations

import numpy as np

MAX_GENERATORS = 12


def _check_m(m: int) -> None:
    if not 0 <= m <= MAX_GENERATORS:
        raise ValueError(f"generator count must be in 0..{MAX_GENERATORS}, got {m}")


def mul_sign(mask_a: int, mask_b: int) -> int:
    """Sign of theta^A * theta^B -> theta^(A xor B) for disjoint masks A, B.

    Counts the transpositions needed to move each generator of B past the
    generators of A that sit above it.
    """
    sign = 0
    b = mask_b
    while b:
        low = b & -b
        # generators of A strictly above this generator of B
        sign += (mask_a & ~(low | (low - 1))).bit_count()
        b ^= low
    return -1 if sign & 1 else 1


class Multivector:
    """Element of the (complexified) exterior algebra on m generators."""

    __slots__ = ("m", "coeffs")

    def __init__(self, m: int, coeffs=None):
        _check_m(m)
        self.m = m
        if coeffs is None:
            arr = np.zeros(1 << m, dtype=complex)
        else:
            arr = np.asarray(coeffs, dtype=complex).copy()
            if arr.shape != (1 << m,):
                raise ValueError(f"expected {1 << m} coefficients for m={m}, got {arr.shape}")
        arr.flags.writeable = False
        self.coeffs = arr

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, m: int) -> "Multivector":
        return cls(m)

    @classmethod
    def scalar(cls, m: int, value) -> "Multivector":
        arr = np.zeros(1 << m, dtype=complex)
        arr[0] = value
        return cls(m, arr)

    @classmethod
    def generator(cls, m: int, a: int) -> "Multivector":
        """theta_a, with a in 1..m."""
        if not 1 <= a <= m:
            raise ValueError(f"generator index {a} out of range 1..{m}")
        arr = np.zeros(1 << m, dtype=complex)
        arr[1 << (a - 1)] = 1.0
        return cls(m, arr)

    @classmethod
    def from_terms(cls, m: int, terms: dict) -> "Multivector":
        """Build from a {mask: coefficient} mapping."""
        arr = np.zeros(1 << m, dtype=complex)
        for mask, c in terms.items():
            if not 0 <= mask < (1 << m):
                raise ValueError(f"mask {mask} out of range for m={m}")
            arr[mask] += c
        return cls(m, arr)

    # -- ring structure ----------------------------------------------------

    def _require_same_m(self, other: "Multivector") -> None:
        if self.m != other.m:
            raise ValueError(f"generator count mismatch: {self.m} vs {other.m}")

    def __add__(self, other):
        if isinstance(other, Multivector):
            self._require_same_m(other)
            return Multivector(self.m, self.coeffs + other.coeffs)
        return self + Multivector.scalar(self.m, other)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-1.0) * (other if isinstance(other, Multivector)
                                else Multivector.scalar(self.m, other))

    def __rsub__(self, other):
        return Multivector.scalar(self.m, other) - self

    def __neg__(self):
        return Multivector(self.m, -self.coeffs)

    def __mul__(self, other):
        if isinstance(other, Multivector):
            return mul(self, other)
        return Multivector(self.m, self.coeffs * complex(other))

    def __rmul__(self, other):
        # scalars commute with everything; Multivector * Multivector never lands here
        return Multivector(self.m, self.coeffs * complex(other))

    def __truediv__(self, scalar):
        return Multivector(self.m, self.coeffs / complex(scalar))

    def __eq__(self, other):
        if not isinstance(other, Multivector):
            return NotImplemented
        return self.m == other.m and np.array_equal(self.coeffs, other.coeffs)

    def __hash__(self):
        return hash((self.m, self.coeffs.tobytes()))

    def allclose(self, other: "Multivector", tol: float = 1e-12) -> bool:
        self._require_same_m(other)
        return bool(np.max(np.abs(self.coeffs - other.coeffs)) <= tol)

    def max_abs(self) -> float:
        return float(np.max(np.abs(self.coeffs)))

    # -- grading and involutions --------------------------------------------

    def body(self) -> complex:
        return complex(self.coeffs[0])

    def soul(self) -> "Multivector":
        arr = self.coeffs.copy()
        arr[0] = 0.0
        return Multivector(self.m, arr)

    def grade(self, k: int) -> "Multivector":
        if not 0 <= k <= self.m:
            raise ValueError(f"grade {k} out of range 0..{self.m}")
        arr = np.where(_grades(self.m) == k, self.coeffs, 0.0)
        return Multivector(self.m, arr)

    def dagger(self) -> "Multivector":
        """Grade-wise involution: grade k picks up conj and (-1)^floor(k/2)."""
        signs = np.where((_grades(self.m) >> 1) & 1, -1.0, 1.0)
        return Multivector(self.m, signs * np.conj(self.coeffs))

    def is_hermitean(self, tol: float = 0.0) -> bool:
        diff = self.dagger().coeffs - self.coeffs
        return bool(np.max(np.abs(diff)) <= tol)

    def berezin(self) -> complex:
        """Top coefficient: d/dtheta_m ... d/dtheta_1 acting from the left.

        Normalized so that berezin(theta_1 ... theta_m) = 1.
        """
        return complex(self.coeffs[-1])

    # -- serialization -------------------------------------------------------

    def to_json_dict(self) -> dict:
        terms = [
            {"mask": int(mask), "re": float(c.real), "im": float(c.imag)}
            for mask, c in enumerate(self.coeffs)
            if c != 0
        ]
        return {"m": self.m, "terms": terms}

    @classmethod
    def from_json_dict(cls, data: dict) -> "Multivector":
        m = int(data["m"])
        arr = np.zeros(1 << m, dtype=complex)
        for t in data["terms"]:
            arr[int(t["mask"])] = float(t.get("re", 0.0)) + 1j * float(t.get("im", 0.0))
        return cls(m, arr)

    def __repr__(self):
        parts = []
        for mask, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mono = "".join(f"t{a + 1}" for a in range(self.m) if mask >> a & 1) or "1"
            parts.append(f"({c:g})*{mono}")
        return f"Multivector[m={self.m}]({' + '.join(parts) or '0'})"


_GRADE_CACHE: dict[int, np.ndarray] = {}


def _grades(m: int) -> np.ndarray:
    arr = _GRADE_CACHE.get(m)
    if arr is None:
        arr = np.array([mask.bit_count() for mask in range(1 << m)])
        arr.flags.writeable = False
        _GRADE_CACHE[m] = arr
    return arr


def mul(a: Multivector, b: Multivector) -> Multivector:
    """Graded-commutative product; terms with a repeated generator vanish."""
    a._require_same_m(b)
    out = np.zeros(1 << a.m, dtype=complex)
    nz_a = np.nonzero(a.coeffs)[0]
    nz_b = np.nonzero(b.coeffs)[0]
    for ma in nz_a:
        ca = a.coeffs[ma]
        for mb in nz_b:
            if ma & mb:
                continue
            out[ma ^ mb] += mul_sign(ma, mb) * ca * b.coeffs[mb]
    return Multivector(a.m, out)


def dagger(f: Multivector) -> Multivector:
    return f.dagger()


def is_hermitean(f: Multivector, tol: float = 0.0) -> bool:
    return f.is_hermitean(tol)


def body(f: Multivector) -> complex:
    return f.body()


def soul(f: Multivector) -> Multivector:
    return f.soul()


def grade(f: Multivector, k: int) -> Multivector:
    return f.grade(k)


def berezin(f: Multivector) -> complex:
    return f.berezin()


def left_derivative(f: Multivector, a: int) -> Multivector:
    """d/dtheta_a acting from the left, a in 1..m."""
    if not 1 <= a <= f.m:
        raise ValueError(f"generator index {a} out of range 1..{f.m}")
    bit = 1 << (a - 1)
    out = np.zeros(1 << f.m, dtype=complex)
    for mask in np.nonzero(f.coeffs)[0]:
        if not mask & bit:
            continue
        # pass the generators below a
        sign = -1.0 if (mask & (bit - 1)).bit_count() & 1 else 1.0
        out[mask ^ bit] += sign * f.coeffs[mask]
    return Multivector(f.m, out)


def right_derivative(f: Multivector, a: int) -> Multivector:
    """d/dtheta_a acting from the right, a in 1..m."""
    if not 1 <= a <= f.m:
        raise ValueError(f"generator index {a} out of range 1..{f.m}")
    bit = 1 << (a - 1)
    out = np.zeros(1 << f.m, dtype=complex)
    for mask in np.nonzero(f.coeffs)[0]:
        if not mask & bit:
            continue
        # pass the generators above a
        sign = -1.0 if (mask & ~(bit | (bit - 1))).bit_count() & 1 else 1.0
        out[mask ^ bit] += sign * f.coeffs[mask]
    return Multivector(f.m, out)


def transform_generators(f: Multivector, t: np.ndarray) -> Multivector:
    """Express f in new generators: old theta_a = sum_b t[a, b] * new theta_b.

    The substitution extends to an algebra morphism, so each basis monomial
    maps to the ordered wedge of transformed generators.
    """
    t = np.asarray(t, dtype=complex)
    m = f.m
    if t.shape != (m, m):
        raise ValueError(f"expected {(m, m)} transform, got {t.shape}")
    new_gens = [Multivector(m, np.concatenate(([0.0], t[a][_SINGLE_MASKS[m]]))
                            if False else _gen_image(m, t[a]))
                for a in range(m)]
    out = Multivector.zero(m)
    for mask in np.nonzero(f.coeffs)[0]:
        term = Multivector.scalar(m, f.coeffs[mask])
        for a in range(m):
            if mask >> a & 1:
                term = term * new_gens[a]
        out = out + term
    return out


_SINGLE_MASKS: dict[int, np.ndarray] = {}


def _gen_image(m: int, row: np.ndarray) -> np.ndarray:
    arr = np.zeros(1 << m, dtype=complex)
    for b in range(m):
        arr[1 << b] = row[b]
    return arr


def random_multivector(m: int, rng: np.random.Generator, scale: float = 1.0,
                       complex_coeffs: bool = True) -> Multivector:
    re = rng.standard_normal(1 << m)
    im = rng.standard_normal(1 << m) if complex_coeffs else 0.0
    return Multivector(m, scale * (re + 1j * im))


def random_hermitean(m: int, rng: np.random.Generator, scale: float = 1.0) -> Multivector:
    """Random fixed point of the dagger involution.

    Grades 0, 1 mod 4 carry real coefficients, grades 2, 3 mod 4 imaginary.
    """
    vals = rng.standard_normal(1 << m) * scale
    grades = _grades(m)
    phase = np.where((grades >> 1) & 1, 1j, 1.0)
    return Multivector(m, phase * vals)
