"""Numpy kernels for the spectral-distance ascent.

The solver maximizes f(x) = <delta, x> / sigma_max(Phi(x)) over reduced
coordinates, where Phi(x) = sum_b x_b C_b.  Work is batched over restart
rows.  Two kernels live here: a smoothed ascent that replaces sigma_max by
a soft-max of all singular values (full SVD per step), and a polish loop
that tracks only the dominant singular pair through warm-started power
iteration.  Both are monotone: a proposal is accepted only if it improves
the (smoothed) objective, otherwise the step shrinks.
"""
from __future__ import annotations

import numpy as np

ALPHA_MIN = 1e-9


def form_stack(c_stack: np.ndarray, x: np.ndarray) -> np.ndarray:
    """Phi(x) for each row of x: (R, r) x (r, d, d) -> (R, d, d)."""
    return np.einsum("rb,bij->rij", x, c_stack, optimize=True)


def exact_top(c_stack: np.ndarray, x: np.ndarray):
    """Exact dominant singular data of Phi(x) per row."""
    phi = form_stack(c_stack, x)
    u_all, s_all, vh_all = np.linalg.svd(phi)
    sigma = s_all[:, 0]
    u = u_all[:, :, 0]
    v = np.conj(vh_all[:, 0, :])
    return sigma, u, v, s_all


def power_refine(phi: np.ndarray, v: np.ndarray, iters: int):
    """Refine right singular vectors by power iteration on Phi† Phi."""
    for _ in range(iters):
        w = np.einsum("rij,rj->ri", phi, v)
        z = np.einsum("rji,rj->ri", np.conj(phi), w)
        nz = np.linalg.norm(z, axis=1, keepdims=True)
        nz[nz == 0.0] = 1.0
        v = z / nz
    w = np.einsum("rij,rj->ri", phi, v)
    sigma = np.linalg.norm(w, axis=1)
    safe = np.where(sigma > 0.0, sigma, 1.0)
    u = w / safe[:, None]
    return sigma, u, v


def _grad_sigma(c_stack: np.ndarray, u: np.ndarray, v: np.ndarray) -> np.ndarray:
    return np.einsum("ri,bij,rj->rb", np.conj(u), c_stack, v, optimize=True).real


def smooth_ascent(c_stack, delta, x, alpha, temp, max_iter, tol, window, grow, shrink):
    """Soft-max smoothed ascent with exact SVD evaluations.

    Returns (x, alpha, best_x, best_f, iters) where best tracking uses the
    exact unsmoothed objective.  Rows stop when their step collapses or the
    exact objective stops improving for `window` accepted proposals.
    """
    R, r = x.shape
    x = x.copy()
    alpha = alpha.copy()

    def full_eval(xx):
        phi = form_stack(c_stack, xx)
        u_all, s_all, vh_all = np.linalg.svd(phi)
        s0 = s_all[:, 0]
        rel = np.exp((s_all - s0[:, None]) / temp)
        zsum = rel.sum(axis=1)
        sig_t = s0 + temp * np.log(zsum)
        weights = rel / zsum[:, None]
        return u_all, s_all, vh_all, s0, sig_t, weights

    u_all, s_all, vh_all, s0, sig_t, weights = full_eval(x)
    scale = np.where(s0 > 0.0, s0, 1.0)
    x = x / scale[:, None]
    s_lin = x @ delta
    # singular values scale linearly with x
    s_all = s_all / scale[:, None]
    sig_t = sig_t / scale
    s0 = s0 / scale
    f_smooth = s_lin / sig_t
    f_true = s_lin / s0

    best_f = f_true.copy()
    best_x = x.copy()
    since_best = np.zeros(R, dtype=int)
    active = np.ones(R, dtype=bool)
    iters = 0

    for _ in range(max_iter):
        if not active.any():
            break
        iters += 1
        v_cols = np.conj(np.swapaxes(vh_all, 1, 2))  # (R, d, k)
        gs = np.einsum("rik,bij,rjk,rk->rb", np.conj(u_all), c_stack, v_cols,
                       weights, optimize=True).real
        grad = delta[None, :] / sig_t[:, None] - (f_smooth / sig_t)[:, None] * gs
        gn = np.linalg.norm(grad, axis=1)
        move = active & (gn > 1e-15)
        active &= gn > 1e-15  # zero gradient: nothing left to do
        if not move.any():
            break
        direction = np.zeros_like(grad)
        direction[move] = grad[move] / gn[move, None]
        prop = x + alpha[:, None] * direction
        pu, ps, pvh, ps0, psig_t, pw = full_eval(prop)
        p_lin = prop @ delta
        pf_smooth = p_lin / psig_t
        acc = move & (pf_smooth > f_smooth)
        rej = move & ~acc
        if acc.any():
            sc = np.where(ps0[acc] > 0.0, ps0[acc], 1.0)
            x[acc] = prop[acc] / sc[:, None]
            u_all[acc] = pu[acc]
            vh_all[acc] = pvh[acc]
            s_all[acc] = ps[acc] / sc[:, None]
            s0[acc] = ps0[acc] / sc
            sig_t[acc] = psig_t[acc] / sc
            weights[acc] = pw[acc]
            s_lin[acc] = p_lin[acc] / sc
            f_smooth[acc] = pf_smooth[acc]
            f_true[acc] = s_lin[acc] / s0[acc]
            alpha[acc] *= grow
            improved = acc & (f_true > best_f + tol * np.maximum(1.0, np.abs(best_f)))
            best_x[improved] = x[improved]
            best_f[improved] = f_true[improved]
            since_best[acc] = np.where(improved[acc], 0, since_best[acc] + 1)
        alpha[rej] *= shrink
        active &= alpha >= ALPHA_MIN
        active &= since_best <= window
    better = f_true > best_f
    best_x[better] = x[better]
    best_f[better] = f_true[better]
    return x, alpha, best_x, best_f, iters


def polish_chunk(c_stack, delta, x, v, alpha, n_iters, power_iters, grow, shrink):
    """Monotone ascent on the exact ratio using warm power iteration.

    Mutates nothing; returns (x, v, alpha, accepts, iters).  Objective
    values seen here are estimates; callers re-certify with an exact SVD
    between chunks.
    """
    x = x.copy()
    v = v.copy()
    alpha = alpha.copy()
    phi = form_stack(c_stack, x)
    accepts = 0
    iters = 0
    for _ in range(n_iters):
        active = alpha >= ALPHA_MIN
        if not active.any():
            break
        iters += 1
        sigma, u, v = power_refine(phi, v, power_iters)
        safe = np.where(sigma > 0.0, sigma, 1.0)
        f = (x @ delta) / safe
        gs = _grad_sigma(c_stack, u, v)
        grad = delta[None, :] / safe[:, None] - (f / safe)[:, None] * gs
        gn = np.linalg.norm(grad, axis=1)
        move = active & (gn > 1e-15)
        if not move.any():
            break
        direction = np.zeros_like(grad)
        direction[move] = grad[move] / gn[move, None]
        prop = x + alpha[:, None] * direction
        dphi = form_stack(c_stack, alpha[:, None] * direction)
        phi_p = phi + dphi
        sig_p, _, v_p = power_refine(phi_p, v, power_iters)
        safe_p = np.where(sig_p > 0.0, sig_p, 1.0)
        f_p = (prop @ delta) / safe_p
        acc = move & (f_p > f)
        rej = move & ~acc
        if acc.any():
            x[acc] = prop[acc] / safe_p[acc, None]
            phi[acc] = phi_p[acc] / safe_p[acc, None, None]
            v[acc] = v_p[acc]
            alpha[acc] *= grow
            accepts += int(acc.sum())
        alpha[rej] *= shrink
    return x, v, alpha, accepts, iters
