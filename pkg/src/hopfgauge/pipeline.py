"""The end-to-end gauge pipeline on a splitting datum."""
from __future__ import annotations

import time
from dataclasses import dataclass, field as dc_field
from typing import Any, Callable

import numpy as np

from .linalg import InputError
from .structures import Report, TensorPowerCoalgebra, ad_invariant_integral, convolution_inverse, is_connected
from .prebialgebra import (SplittingDatum, bosonize_cocycle, check_associative, extract_prebialgebra,
                           mho_n, trivial_cocycle)
from .cohomology import partial_bialgebra, partial_prebialgebra
from .dualquasi import (DualQuasiData, alpha_of, bosonize_braided_dq, check_braided_dq, check_dual_quasi,
                        check_G_membership, check_v_conditions, coradical_sanity, map_F, map_G,
                        trivial_reassociator, twist_dual_quasi, twist_prebialgebra)


@dataclass
class Stage:
    name: str
    status: str  # pass | fail | skipped
    seconds: float = 0.0
    report: Report | None = None
    note: str = ""

    def witnesses(self) -> list:
        if self.report is None:
            return []
        return [{"item": it.name, "witness": list(it.witness) if isinstance(it.witness, tuple) else it.witness}
                for it in self.report.failed()]


@dataclass
class PipelineReport:
    stages: list[Stage] = dc_field(default_factory=list)
    artifacts: dict[str, Any] = dc_field(default_factory=dict)
    field: Any = None
    context: dict[str, Any] = dc_field(default_factory=dict, repr=False)  # intermediate objects

    @property
    def ok(self) -> bool:
        return bool(self.stages) and all(s.status == "pass" for s in self.stages)

    def stage(self, name: str) -> Stage:
        for s in self.stages:
            if s.name == name:
                return s
        raise KeyError(name)

    def table(self, timings: bool = False) -> str:
        """Tab-separated stage table; timings are opt-in so the output is reproducible."""
        head = ["stage", "status"] + (["seconds"] if timings else []) + ["note"]
        rows = ["\t".join(head)]
        for s in self.stages:
            cells = [s.name, s.status] + ([f"{s.seconds:.3f}"] if timings else []) + [s.note]
            rows.append("\t".join(cells))
        rows.append("\t".join(["verdict", "pass" if self.ok else "fail"] + [""] * (len(head) - 2)))
        return "\n".join(rows)

    def to_json(self, timings: bool = True) -> dict:
        F = self.field
        arts = {}
        for k, val in self.artifacts.items():
            if isinstance(val, np.ndarray):
                arts[k] = F.to_json(val)
            else:
                arts[k] = val
        stages = []
        for s in self.stages:
            entry = {"name": s.name, "status": s.status, "note": s.note, "witnesses": s.witnesses(),
                     "items": [] if s.report is None else [
                         {"name": it.name, "ok": it.ok, "detail": it.detail} for it in s.report.items]}
            if timings:
                entry["seconds"] = round(s.seconds, 4)
            stages.append(entry)
        return {"verdict": "pass" if self.ok else "fail", "stages": stages, "artifacts": arts}


class _Abort(Exception):
    pass


STAGES = ("extract", "connected", "integral", "gauge", "twist_R", "zeta", "twist_A", "bosonize", "compare")


def run_pipeline(datum: SplittingDatum, keep_going: bool = False, stop_after: str | None = None) -> PipelineReport:
    """Decompose, gauge, twist and bosonize; compare ``A^zeta`` with ``R^v # H``.

    Stops at the first failing stage unless ``keep_going``; later stages whose
    inputs are missing are then reported as skipped.
    """
    if stop_after is not None and stop_after not in STAGES:
        raise InputError(f"unknown stage {stop_after!r}")
    out = PipelineReport(field=datum.A.field)
    F = datum.A.field
    ctx = out.context

    def run(name: str, fn: Callable[[], tuple[Report, str]], needs: tuple[str, ...] = ()):
        if any(k not in ctx for k in needs):
            out.stages.append(Stage(name, "skipped", note="missing inputs from an earlier stage"))
            return
        t0 = time.perf_counter()
        try:
            rep, note = fn()
            status = "pass" if rep.ok else "fail"
        except InputError as exc:
            rep, note, status = None, str(exc).splitlines()[0], "fail"
        out.stages.append(Stage(name, status, time.perf_counter() - t0, rep, note))
        if status != "pass" and not keep_going:
            raise _Abort

    def s_extract():
        ext = extract_prebialgebra(datum)
        ctx["ext"] = ext
        P, xi = ext.P, ext.xi
        ctx["P"], ctx["xi"] = P, xi
        A, _, _ = bosonize_cocycle(P, xi, check=False)
        ctx["A"] = A  # A in the R # H basis, identified with the input through omega
        out.artifacts["R_labels"] = list(P.labels)
        out.artifacts["xi"] = xi
        out.artifacts["omega"] = ext.omega
        trivial = F.equal(xi, trivial_cocycle(P))
        out.artifacts["xi_trivial"] = trivial
        return ext.report, f"dim R = {P.dim}, xi {'trivial' if trivial else 'nontrivial'}"

    def s_connected():
        ok, dims = is_connected(ctx["P"].R.coalgebra)
        rep = Report()
        rep.add("R connected", ok, detail="wedge dims " + ",".join(map(str, dims)))
        if ok:
            ctx["connected"] = True
        return rep, "wedge dims " + ",".join(map(str, dims))

    def s_integral():
        lam = ad_invariant_integral(datum.H)
        rep = Report()
        rep.add("ad-invariant integral exists", lam is not None)
        if lam is not None:
            ctx["lam"] = lam
            out.artifacts["lambda"] = lam
        return rep, ""

    def s_gauge():
        P, xi, lam = ctx["P"], ctx["xi"], ctx["lam"]
        v = map_G(P, xi, lam)
        rep = check_G_membership(P, v, lam)
        rep.extend(check_v_conditions(P, v))
        rep.compare(F, "F(v) = xi", map_F(P, v), xi)
        ctx["v"] = v
        out.artifacts["v"] = v
        trivial = F.equal(v, P.RR.counit)
        return rep, f"v {'= eps' if trivial else '!= eps'}"

    def s_twist_R():
        P, xi, v = ctx["P"], ctx["xi"], ctx["v"]
        Q = twist_prebialgebra(P, v, xi)
        rep = check_braided_dq(Q)
        rep.compare(F, "alpha(v) = d2_R(v)", alpha_of(P, v), Q.alpha)
        rep.compare(F, "d2_R(v): transport route = explicit route",
                    partial_prebialgebra(P, xi, v, 2, route="transport", A=ctx["A"]), Q.alpha)
        ctx["Q"] = Q
        out.artifacts["alpha"] = Q.alpha
        assoc, _ = check_associative(Q.P)
        out.artifacts["m_v_associative"] = assoc
        trivial = F.equal(Q.alpha, P.RRR.counit)
        return rep, f"alpha {'= eps' if trivial else '!= eps'}, m^v {'associative' if assoc else 'not associative'}"

    def s_zeta():
        P, v, A = ctx["P"], ctx["v"], ctx["A"]
        zeta = mho_n(v, P, 2)
        C2 = TensorPowerCoalgebra(A.coalgebra, 2)
        zinv = convolution_inverse(zeta, C2)
        rep = Report()
        rep.add("zeta invertible", zinv is not None)
        z3 = zeta.reshape(A.dim, A.dim)
        rep.compare(F, "zeta unital (left)", F.dot(A.unit, z3), A.counit)
        rep.compare(F, "zeta unital (right)", F.dot(z3, A.unit), A.counit)
        ctx["zeta"], ctx["zeta_inv"] = zeta, zinv
        out.artifacts["zeta"] = zeta
        om_inv = ctx["ext"].omega_inv
        out.artifacts["zeta_input_basis"] = F.dot(zeta, F.kron(om_inv, om_inv))
        trivial = F.equal(zeta, C2.counit)
        return rep, f"zeta {'= eps' if trivial else '!= eps'}"

    def s_twist_A():
        A = ctx["A"]
        D = DualQuasiData(A, trivial_reassociator(A))
        Az = twist_dual_quasi(D, ctx["zeta"], ctx["zeta_inv"])
        rep = check_dual_quasi(Az)
        d2 = partial_bialgebra(A, ctx["zeta"], 2, w_inv=ctx["zeta_inv"])
        rep.compare(F, "alpha_{A^zeta} = d2_A(zeta)", Az.alpha, d2)
        ctx["Az"] = Az
        return rep, ""

    def s_bosonize():
        B = bosonize_braided_dq(ctx["Q"])
        rep = check_dual_quasi(B)
        rep.extend(coradical_sanity(ctx["Q"], B), prefix="coradical: ")
        ctx["B"] = B
        return rep, ""

    def s_compare():
        Az, B, P, v = ctx["Az"], ctx["B"], ctx["P"], ctx["v"]
        rep = Report()
        rep.compare(F, "m_{A^zeta} = m_{R^v # H}", Az.D.mult, B.D.mult)
        rep.compare(F, "Delta_A = Delta_{R^v # H}", Az.D.delta, B.D.delta)
        rep.compare(F, "d2_A(zeta) = Mho^3(d2_R(v))", Az.alpha, mho_n(ctx["Q"].alpha, P, 3))
        rep.compare(F, "d2_A(zeta) = alpha_{R^v # H}", Az.alpha, B.alpha)
        out.artifacts["reassociator_trivial"] = F.equal(Az.alpha, TensorPowerCoalgebra(ctx["A"].coalgebra, 3).counit)
        return rep, ""

    plan = [
        ("extract", s_extract, ()),
        ("connected", s_connected, ("P",)),
        ("integral", s_integral, ()),
        ("gauge", s_gauge, ("P", "lam", "connected")),
        ("twist_R", s_twist_R, ("v",)),
        ("zeta", s_zeta, ("v", "A")),
        ("twist_A", s_twist_A, ("zeta",)),
        ("bosonize", s_bosonize, ("Q",)),
        ("compare", s_compare, ("Az", "B")),
    ]
    try:
        for name, fn, needs in plan:
            run(name, fn, needs)
            if name == stop_after:
                break
    except _Abort:
        pass
    return out
