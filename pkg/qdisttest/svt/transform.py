from __future__ import annotations

import torch
from torch import Tensor

from qdisttest.core.linalg import DTYPE, Operator, as_complex, dagger, psd_sqrt
from qdisttest.core.states import PureState
from qdisttest.encodings.base import ProjectedUnitaryEncoding, RegisterLayout
from qdisttest.oracles.counter import QueryCost
from qdisttest.poly.approx import ApproxPolynomial


class TransformedMap:
    """P^(SV)(A) for an encoding of A, acting on the full space of the
    encoding's unitary.

    Odd maps send the image of Π̃ to the image of Π; even maps act within
    the image of Π̃.
    """

    def __init__(
        self,
        operator: Operator,
        polynomial: ApproxPolynomial,
        cost: QueryCost,
        in_layout: RegisterLayout | None,
        out_layout: RegisterLayout | None,
    ):
        self.operator = operator
        self.polynomial = polynomial
        self.cost = cost
        self.in_layout = in_layout
        self.out_layout = out_layout

    @property
    def parity(self) -> str:
        return self.polynomial.parity  # type: ignore

    @property
    def query_cost_per_use(self) -> int:
        return self.cost.total

    @property
    def controlled_reflections(self) -> int:
        return self.cost.reflections

    def compressed(self) -> Tensor:
        """The map between the free registers: V_out† M V_in, with
        V_out = V_in for even maps."""
        if self.in_layout is None:
            raise ValueError("the transformed map has no product-form input layout.")
        v_in = self.in_layout.isometry()
        if self.parity == "even":
            v_out = v_in
        elif self.out_layout is None:
            raise ValueError("an odd transformed map needs a product-form output layout.")
        else:
            v_out = self.out_layout.isometry()
        return dagger(v_out) @ self.operator.matrix @ v_in

    def __repr__(self) -> str:
        return (
            f"{self.__class__.__name__}(shape={self.operator.shape}, parity={self.parity}, "
            f"degree={self.polynomial.degree}, query_cost_per_use={self.query_cost_per_use})"
        )


def apply_svt(e: ProjectedUnitaryEncoding, poly: ApproxPolynomial) -> TransformedMap:
    """Singular value transformation of A = Π U Π̃ by a certified polynomial
    of definite parity.

    With A V_in = Σ ς_i |ψ̃_i⟩⟨ψ_i|, the odd transform is Σ P(ς_i)|ψ̃_i⟩⟨ψ_i|
    and the even transform Σ P(ς_i)|ψ_i⟩⟨ψ_i|, where the right singular
    vectors are completed to a basis of the image of Π̃ with ς_i = 0. The
    result is computed from the SVD; the circuit it stands for uses U and U†
    deg(P) times in total with as many controlled reflections, and that is
    what the returned cost charges.

    Args:
        e (ProjectedUnitaryEncoding): the encoding.
        poly (ApproxPolynomial): polynomial with `parity` set and a passed certificate.

    Returns:
        TransformedMap: the transformed operator on the full space of U.
    """
    if poly.certificate is None or not poly.certificate.passed:
        raise ValueError("singular value transformation requires a certified polynomial with |P| <= 1.")
    if poly.parity not in ("even", "odd"):
        raise ValueError("singular value transformation requires a polynomial of definite parity.")
    v_in = e.in_isometry()
    a_c = e.encoded.matrix @ v_in
    if poly.parity == "odd":
        u, s, vh = torch.linalg.svd(a_c, full_matrices=False)
        ps = as_complex(poly(s.numpy()))
        m = (u * ps.unsqueeze(0)) @ vh @ dagger(v_in)
    else:
        _, s, vh = torch.linalg.svd(a_c, full_matrices=True)
        padded = torch.zeros(vh.size(0), dtype=torch.float64)
        padded[: s.numel()] = s
        ps = as_complex(poly(padded.numpy()))
        m = v_in @ (dagger(vh) * ps.unsqueeze(0)) @ vh @ dagger(v_in)
    cost = (e.cost * poly.degree).with_reflections(poly.degree)
    return TransformedMap(Operator(m), poly, cost, e.in_layout, e.out_layout)


def apply_to_state(m: TransformedMap, s: PureState, acting_register: int) -> PureState:
    """Dilation of the transformed map applied to one register of `s`.

    Returns (M ⊗ I)|s⟩|0⟩ + (√(I - M†M) ⊗ I)|s⟩|1⟩ with the flag qubit
    appended as the last register.
    """
    return apply_contraction(m.compressed(), s, acting_register)


def apply_contraction(mc: Tensor, s: PureState, acting_register: int) -> PureState:
    """Flagged dilation of a square contraction acting on one register."""
    if mc.size(0) != mc.size(1):
        raise ValueError(f"map of shape {tuple(mc.shape)} does not act within one register.")
    if not 0 <= acting_register < len(s.register_dims) or s.register_dims[acting_register] != mc.size(1):
        raise ValueError(f"map on dim {mc.size(1)} cannot act on register {acting_register} of {s.register_dims}.")
    good = s.apply_local(mc, acting_register)
    rest = psd_sqrt(torch.eye(mc.size(1), dtype=DTYPE) - dagger(mc) @ mc)
    garbage = s.apply_local(rest, acting_register)
    amplitudes = torch.stack([good, garbage], dim=-1)
    dims = s.register_dims + (2,)
    return PureState(amplitudes.flatten(), dims, s.flag_registers + (len(dims) - 1,))
