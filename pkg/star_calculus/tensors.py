"""Frame-component tensors and forms over the deformed function algebra.

A k-tensor is stored by its values T(X_i1, ..., X_ik) on the frame; a
k-form only by the values on strictly increasing index tuples, the rest
following by antisymmetry. Index tuples are 0-based.
"""

from __future__ import annotations

import itertools
import math
from collections.abc import Iterable, Mapping
from dataclasses import dataclass
from typing import Literal

from sympy.polys.rings import PolyRing

from abelian.functions import StarFunction
from weyl_core.forms import sort_dx
from weyl_core.polynomials import chart_dimension
from weyl_core.scalars import rational
from weyl_core.validation import ConfigurationError, require_index

from .frame import Frame

Side = Literal["left", "right"]
Indices = tuple[int, ...]


def _accumulate(target: dict[Indices, StarFunction], key: Indices, value: StarFunction) -> None:
    current = target.get(key)
    target[key] = value if current is None else current + value


def _clean(components: dict[Indices, StarFunction]) -> dict[Indices, StarFunction]:
    return {key: value for key, value in sorted(components.items()) if not value.is_zero()}


@dataclass(frozen=True)
class StarTensor:
    ring: PolyRing
    rank: int
    components: Mapping[Indices, StarFunction]

    def __post_init__(self) -> None:
        dim = chart_dimension(self.ring)
        for key in self.components:
            if len(key) != self.rank:
                raise ConfigurationError(f"Component {key} does not have rank {self.rank}")
            for index in key:
                require_index(index, dim, what="frame index")
        object.__setattr__(self, "components", _clean(dict(self.components)))

    @property
    def dim(self) -> int:
        return chart_dimension(self.ring)

    @classmethod
    def zero(cls, ring: PolyRing, rank: int) -> StarTensor:
        return cls(ring, rank, {})

    def component(self, indices: Iterable[int]) -> StarFunction:
        key = tuple(indices)
        for index in key:
            require_index(index, self.dim, what="frame index")
        if len(key) != self.rank:
            raise ConfigurationError(f"Expected {self.rank} indices, got {len(key)}")
        return self.components.get(key, StarFunction.zero(self.ring))

    def _combine(self, other: StarTensor, sign: int) -> StarTensor:
        if type(other) is not type(self) or other.rank != self.rank or other.ring != self.ring:
            raise ConfigurationError("Tensors of different kind, rank or chart")
        merged = dict(self.components)
        for key, value in other.components.items():
            _accumulate(merged, key, value if sign > 0 else -value)
        return type(self)(self.ring, self.rank, merged)

    def __add__(self, other: StarTensor) -> StarTensor:
        return self._combine(other, 1)

    def __sub__(self, other: StarTensor) -> StarTensor:
        return self._combine(other, -1)

    def __neg__(self) -> StarTensor:
        return self.map(lambda value: -value)

    def map(self, fn) -> StarTensor:
        return type(self)(
            self.ring, self.rank, {key: fn(value) for key, value in self.components.items()}
        )

    def scale(self, factor) -> StarTensor:
        return self.map(lambda value: value.scale(factor))

    def is_zero(self) -> bool:
        return not self.components


class StarForm(StarTensor):
    """Antisymmetric tensor kept on strictly increasing index tuples.

    Construction accepts any ordering and folds it onto the increasing
    representative with the permutation sign; repeated indices vanish.
    """

    def __post_init__(self) -> None:
        dim = chart_dimension(self.ring)
        folded: dict[Indices, StarFunction] = {}
        for key, value in self.components.items():
            if len(key) != self.rank:
                raise ConfigurationError(f"Component {key} does not have rank {self.rank}")
            for index in key:
                require_index(index, dim, what="frame index")
            sign, ordered = sort_dx(key)
            if sign:
                _accumulate(folded, ordered, value if sign > 0 else -value)
        object.__setattr__(self, "components", _clean(folded))

    @classmethod
    def function(cls, f: StarFunction) -> StarForm:
        return cls(f.ring, 0, {(): f})

    def component(self, indices: Iterable[int]) -> StarFunction:
        key = tuple(indices)
        if len(key) != self.rank:
            raise ConfigurationError(f"Expected {self.rank} indices, got {len(key)}")
        for index in key:
            require_index(index, self.dim, what="frame index")
        sign, ordered = sort_dx(key)
        if not sign:
            return StarFunction.zero(self.ring)
        value = self.components.get(ordered, StarFunction.zero(self.ring))
        return value if sign > 0 else -value


def eval_on_frame(tensor: StarTensor, indices: Iterable[int]) -> StarFunction:
    """T(X_i1, ..., X_ik); forms apply the permutation sign."""
    return tensor.component(indices)


def theta(ring: PolyRing, j: int) -> StarForm:
    """The dual frame 1-form with θ^j(X_i) = δ^j_i."""
    require_index(j, chart_dimension(ring), what="frame index")
    return StarForm(ring, 1, {(j,): StarFunction.one(ring)})


def as_tensor(form: StarForm) -> StarTensor:
    """Antisymmetric completion of a form to all index orderings."""
    components: dict[Indices, StarFunction] = {}
    for key, value in form.components.items():
        for perm in itertools.permutations(key):
            sign, _ = sort_dx(perm)
            components[perm] = value if sign > 0 else -value
    return StarTensor(form.ring, form.rank, components)


def _tensor_view(tensor: StarTensor) -> StarTensor:
    return as_tensor(tensor) if isinstance(tensor, StarForm) else tensor


def tensor_star(frame: Frame, left: StarTensor, right: StarTensor) -> StarTensor:
    """(T ⊗_* S)(X_I, X_J) = T(X_I) * S(X_J)."""
    left, right = _tensor_view(left), _tensor_view(right)
    components = {
        key_l + key_r: frame.star(value_l, value_r)
        for key_l, value_l in left.components.items()
        for key_r, value_r in right.components.items()
    }
    return StarTensor(frame.ring, left.rank + right.rank, components)


def alt(tensor: StarTensor) -> StarForm:
    """Alt(T)_I = (1/k!) Σ_σ sgn(σ) T_{σ(I)}."""
    tensor = _tensor_view(tensor)
    k = tensor.rank
    weight = rational(1, math.factorial(k))
    components: dict[Indices, StarFunction] = {}
    for key, value in tensor.components.items():
        sign, ordered = sort_dx(key)
        if sign:
            _accumulate(components, ordered, value.scale(weight * sign))
    return StarForm(tensor.ring, k, components)


def wedge_star(frame: Frame, left: StarForm, right: StarForm) -> StarForm:
    """η ∧_* ξ = (k+l)!/(k! l!) Alt(η ⊗_* ξ); for 0-forms a module product."""
    k, l = left.rank, right.rank
    if k == 0:
        return module_mul(frame, "left", left.component(()), right)
    if l == 0:
        return module_mul(frame, "right", right.component(()), left)
    if k + l > frame.dim:
        return StarForm(frame.ring, k + l, {})
    product = alt(tensor_star(frame, left, right))
    return product.scale(rational(math.comb(k + l, k)))


def module_mul(frame: Frame, side: Side, f: StarFunction, tensor: StarTensor) -> StarTensor:
    """Componentwise f * T (left) or T * f (right)."""
    if side == "left":
        return tensor.map(lambda value: frame.star(f, value))
    if side == "right":
        return tensor.map(lambda value: frame.star(value, f))
    raise ConfigurationError(f"Unknown module side: {side}")


__all__ = [
    "Side",
    "StarForm",
    "StarTensor",
    "alt",
    "as_tensor",
    "eval_on_frame",
    "module_mul",
    "tensor_star",
    "theta",
    "wedge_star",
]
