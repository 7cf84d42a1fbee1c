"""Solution-scoring kernels: a JIT-compiled path and a vectorized fallback.

The environment variable GOALRANK_BACKEND picks the implementation: "numba"
(JIT compiled, with an optional multi-threaded variant), "numpy" (pure
vectorized), or "auto" (default: numba when importable). Both backends
produce identical integers: per-solution softgoal contributions scaled by a
common factor, hardgoal score sums, and satisfaction flags for every scored
hardgoal, so callers can reconstruct exact rationals.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np

from .model import AND, MAKE, TASK, EffectiveScores, GoalModel
from .semantics import Solution

try:
    from numba import njit, prange
    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised via GOALRANK_BACKEND=numpy
    HAVE_NUMBA = False

BACKEND_ENV = "GOALRANK_BACKEND"

OP_TASK, OP_AND, OP_OR = 0, 1, 2


def resolve_backend(explicit: str | None = None) -> str:
    choice = explicit or os.environ.get(BACKEND_ENV, "auto")
    if choice == "auto":
        return "numba" if HAVE_NUMBA else "numpy"
    if choice not in ("numba", "numpy"):
        raise ValueError(f"unknown backend {choice!r} (use numba, numpy, or auto)")
    if choice == "numba" and not HAVE_NUMBA:
        raise RuntimeError("numba backend requested but numba is not importable")
    return choice


@dataclass
class ScorePlan:
    """Flattened arrays describing one scoring problem.

    Nodes are indexed in post-order (children before parents), so a single
    forward sweep evaluates satisfaction bottom-up.
    """

    membership: np.ndarray  # uint8 (n_solutions, n_tasks)
    ops: np.ndarray  # int8 (n_nodes,) OP_* codes
    child_ptr: np.ndarray  # int32 (n_nodes + 1,)
    child_idx: np.ndarray  # int32, child slices per node
    task_col: np.ndarray  # int32 (n_nodes,) column in membership, -1 if not a task
    link_src: np.ndarray  # int32 (n_links,) node index
    link_sg: np.ndarray  # int32 (n_links,) scored-softgoal index
    link_sign: np.ndarray  # int8 (n_links,) +1 make, -1 break
    sg_score: np.ndarray  # int64 (n_softgoals,)
    hg_node: np.ndarray  # int32 (n_hardgoals,) node index
    hg_score: np.ndarray  # int64 (n_hardgoals,)
    scale: int  # common denominator multiplier for contributions
    dominance: bool
    sg_ids: list[str]
    hg_ids: list[str]


def build_plan(
    model: GoalModel,
    solutions: list[Solution],
    effective: EffectiveScores,
    scale: int,
    dominance: bool,
) -> ScorePlan:
    tasks = model.task_ids()
    col = {t: i for i, t in enumerate(tasks)}
    membership = np.zeros((len(solutions), len(tasks)), dtype=np.uint8)
    for row, sol in enumerate(solutions):
        for t in sol:
            membership[row, col[t]] = 1

    order: list[str] = []

    def post(node_id: str) -> None:
        if model.nodes[node_id].kind != TASK:
            for child in model.decompositions[node_id].children:
                post(child)
        order.append(node_id)

    post(model.root)
    node_idx = {node_id: k for k, node_id in enumerate(order)}

    ops = np.empty(len(order), dtype=np.int8)
    task_col = np.full(len(order), -1, dtype=np.int32)
    child_ptr = np.zeros(len(order) + 1, dtype=np.int32)
    child_idx: list[int] = []
    for k, node_id in enumerate(order):
        if model.nodes[node_id].kind == TASK:
            ops[k] = OP_TASK
            task_col[k] = col[node_id]
        else:
            dec = model.decompositions[node_id]
            ops[k] = OP_AND if dec.operator == AND else OP_OR
            child_idx.extend(node_idx[c] for c in dec.children)
        child_ptr[k + 1] = len(child_idx)

    sg_ids = sorted(effective.softgoal)
    sg_pos = {sg: j for j, sg in enumerate(sg_ids)}
    rows = [
        (node_idx[l.source], sg_pos[l.target], 1 if l.polarity == MAKE else -1)
        for l in model.contributions
        if l.target in sg_pos and l.source in node_idx
    ]
    hg_ids = sorted(hg for hg in effective.hardgoal if hg in node_idx)

    return ScorePlan(
        membership=membership,
        ops=ops,
        child_ptr=child_ptr,
        child_idx=np.array(child_idx, dtype=np.int32),
        task_col=task_col,
        link_src=np.array([r[0] for r in rows], dtype=np.int32),
        link_sg=np.array([r[1] for r in rows], dtype=np.int32),
        link_sign=np.array([r[2] for r in rows], dtype=np.int8),
        sg_score=np.array([effective.softgoal[sg] for sg in sg_ids], dtype=np.int64),
        hg_node=np.array([node_idx[hg] for hg in hg_ids], dtype=np.int32),
        hg_score=np.array([effective.hardgoal[hg] for hg in hg_ids], dtype=np.int64),
        scale=scale,
        dominance=dominance,
        sg_ids=sg_ids,
        hg_ids=hg_ids,
    )


def score_solutions(
    plan: ScorePlan,
    backend: str | None = None,
    parallel: bool = False,
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Returns (contrib, hps, hg_sat).

    contrib: int64 (n_solutions, n_softgoals), each value = contribution
    rational times plan.scale (exact, since fired-link counts divide scale).
    hps: int64 (n_solutions,) unscaled hardgoal sums.
    hg_sat: uint8 (n_solutions, n_hardgoals) satisfaction of scored hardgoals.
    """
    name = resolve_backend(backend)
    if name == "numba":
        kernel = _score_parallel if parallel else _score_serial
        return kernel(
            plan.membership, plan.ops, plan.child_ptr, plan.child_idx, plan.task_col,
            plan.link_src, plan.link_sg, plan.link_sign, plan.sg_score,
            plan.hg_node, plan.hg_score, np.int64(plan.scale), plan.dominance)
    return _score_numpy(plan)


def _score_numpy(plan: ScorePlan) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    n_sol = plan.membership.shape[0]
    n_nodes = plan.ops.shape[0]
    n_sg = plan.sg_score.shape[0]

    sat = np.zeros((n_sol, n_nodes), dtype=bool)
    for k in range(n_nodes):
        if plan.ops[k] == OP_TASK:
            sat[:, k] = plan.membership[:, plan.task_col[k]] != 0
        else:
            children = plan.child_idx[plan.child_ptr[k]:plan.child_ptr[k + 1]]
            if plan.ops[k] == OP_AND:
                sat[:, k] = sat[:, children].all(axis=1)
            else:
                sat[:, k] = sat[:, children].any(axis=1)

    pos = np.zeros((n_sol, n_sg), dtype=np.int64)
    neg = np.zeros((n_sol, n_sg), dtype=np.int64)
    for src, sg, sign in zip(plan.link_src, plan.link_sg, plan.link_sign):
        fired = sat[:, src]
        if sign > 0:
            pos[:, sg] += fired
        else:
            neg[:, sg] += fired

    total = pos + neg
    score = plan.sg_score[np.newaxis, :]
    if plan.dominance:
        contrib = np.where(
            (pos > 0) & (neg == 0), score * plan.scale,
            np.where((neg > 0) & (pos == 0), -score * plan.scale, 0))
    else:
        unit = np.where(total > 0, plan.scale // np.maximum(total, 1), 0)
        contrib = (pos - neg) * unit * score
    contrib = contrib.astype(np.int64)

    hg_sat = sat[:, plan.hg_node].astype(np.uint8)
    hps = hg_sat.astype(np.int64) @ plan.hg_score
    return contrib, hps, hg_sat


if HAVE_NUMBA:

    def _kernel_body(membership, ops, child_ptr, child_idx, task_col,
                     link_src, link_sg, link_sign, sg_score,
                     hg_node, hg_score, scale, dominance,
                     s, sat, pos, neg, contrib, hps, hg_sat):
        n_nodes = ops.shape[0]
        for k in range(n_nodes):
            if ops[k] == 0:
                sat[k] = membership[s, task_col[k]]
            elif ops[k] == 1:
                ok = 1
                for ci in range(child_ptr[k], child_ptr[k + 1]):
                    if sat[child_idx[ci]] == 0:
                        ok = 0
                        break
                sat[k] = ok
            else:
                ok = 0
                for ci in range(child_ptr[k], child_ptr[k + 1]):
                    if sat[child_idx[ci]] == 1:
                        ok = 1
                        break
                sat[k] = ok
        for j in range(sg_score.shape[0]):
            pos[j] = 0
            neg[j] = 0
        for li in range(link_src.shape[0]):
            if sat[link_src[li]] == 1:
                if link_sign[li] > 0:
                    pos[link_sg[li]] += 1
                else:
                    neg[link_sg[li]] += 1
        for j in range(sg_score.shape[0]):
            p = pos[j]
            q = neg[j]
            if p + q == 0:
                contrib[s, j] = 0
            elif dominance:
                if q == 0:
                    contrib[s, j] = sg_score[j] * scale
                elif p == 0:
                    contrib[s, j] = -sg_score[j] * scale
                else:
                    contrib[s, j] = 0
            else:
                contrib[s, j] = (p - q) * (scale // (p + q)) * sg_score[j]
        acc = 0
        for h in range(hg_node.shape[0]):
            if sat[hg_node[h]] == 1:
                hg_sat[s, h] = 1
                acc += hg_score[h]
        hps[s] = acc

    _inner = njit(cache=True)(_kernel_body)

    @njit(cache=True)
    def _score_serial(membership, ops, child_ptr, child_idx, task_col,
                      link_src, link_sg, link_sign, sg_score,
                      hg_node, hg_score, scale, dominance):
        n_sol = membership.shape[0]
        contrib = np.zeros((n_sol, sg_score.shape[0]), dtype=np.int64)
        hps = np.zeros(n_sol, dtype=np.int64)
        hg_sat = np.zeros((n_sol, hg_node.shape[0]), dtype=np.uint8)
        sat = np.zeros(ops.shape[0], dtype=np.uint8)
        pos = np.zeros(sg_score.shape[0], dtype=np.int64)
        neg = np.zeros(sg_score.shape[0], dtype=np.int64)
        for s in range(n_sol):
            _inner(membership, ops, child_ptr, child_idx, task_col,
                   link_src, link_sg, link_sign, sg_score,
                   hg_node, hg_score, scale, dominance,
                   s, sat, pos, neg, contrib, hps, hg_sat)
        return contrib, hps, hg_sat

    @njit(cache=True, parallel=True)
    def _score_parallel(membership, ops, child_ptr, child_idx, task_col,
                        link_src, link_sg, link_sign, sg_score,
                        hg_node, hg_score, scale, dominance):
        n_sol = membership.shape[0]
        contrib = np.zeros((n_sol, sg_score.shape[0]), dtype=np.int64)
        hps = np.zeros(n_sol, dtype=np.int64)
        hg_sat = np.zeros((n_sol, hg_node.shape[0]), dtype=np.uint8)
        for s in prange(n_sol):
            sat = np.zeros(ops.shape[0], dtype=np.uint8)
            pos = np.zeros(sg_score.shape[0], dtype=np.int64)
            neg = np.zeros(sg_score.shape[0], dtype=np.int64)
            _inner(membership, ops, child_ptr, child_idx, task_col,
                   link_src, link_sg, link_sign, sg_score,
                   hg_node, hg_score, scale, dominance,
                   s, sat, pos, neg, contrib, hps, hg_sat)
        return contrib, hps, hg_sat
