# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False, language_level=3
"""Compiled polish kernel for the spectral-distance ascent.

Single-restart counterpart of the numpy polish loop: monotone ratio ascent
with warm-started power iteration on the dominant singular pair.  The
caller re-certifies with an exact SVD between chunks.
"""

import numpy as np

from libc.math cimport sqrt

cdef double ALPHA_MIN = 1e-9


cdef void _form(double complex[:, :, ::1] c_stack, double[::1] x,
                double complex[:, ::1] phi) noexcept nogil:
    cdef Py_ssize_t b, i, j
    cdef Py_ssize_t r = c_stack.shape[0]
    cdef Py_ssize_t d = c_stack.shape[1]
    cdef double xb
    for i in range(d):
        for j in range(d):
            phi[i, j] = 0
    for b in range(r):
        xb = x[b]
        if xb != 0.0:
            for i in range(d):
                for j in range(d):
                    phi[i, j] = phi[i, j] + xb * c_stack[b, i, j]


cdef void _matvec(double complex[:, ::1] phi, double complex[::1] v,
                  double complex[::1] out) noexcept nogil:
    cdef Py_ssize_t i, j
    cdef Py_ssize_t d = phi.shape[0]
    cdef double complex acc
    for i in range(d):
        acc = 0
        for j in range(d):
            acc = acc + phi[i, j] * v[j]
        out[i] = acc


cdef void _matvec_adj(double complex[:, ::1] phi, double complex[::1] w,
                      double complex[::1] out) noexcept nogil:
    cdef Py_ssize_t i, j
    cdef Py_ssize_t d = phi.shape[0]
    cdef double complex acc
    for j in range(d):
        acc = 0
        for i in range(d):
            acc = acc + phi[i, j].conjugate() * w[i]
        out[j] = acc


cdef double _power(double complex[:, ::1] phi, double complex[::1] v,
                   double complex[::1] u, double complex[::1] work,
                   int iters) noexcept nogil:
    """Refine v in place, fill u, return the singular value estimate."""
    cdef Py_ssize_t i
    cdef Py_ssize_t d = phi.shape[0]
    cdef double nrm
    cdef int k
    for k in range(iters):
        _matvec(phi, v, work)
        _matvec_adj(phi, work, u)
        nrm = 0.0
        for i in range(d):
            nrm += u[i].real * u[i].real + u[i].imag * u[i].imag
        nrm = sqrt(nrm)
        if nrm == 0.0:
            break
        for i in range(d):
            v[i] = u[i] / nrm
    _matvec(phi, v, work)
    nrm = 0.0
    for i in range(d):
        nrm += work[i].real * work[i].real + work[i].imag * work[i].imag
    nrm = sqrt(nrm)
    if nrm > 0.0:
        for i in range(d):
            u[i] = work[i] / nrm
    else:
        for i in range(d):
            u[i] = 0
    return nrm


cdef void _grad_sigma(double complex[:, :, ::1] c_stack, double complex[::1] u,
                      double complex[::1] v, double[::1] gs) noexcept nogil:
    cdef Py_ssize_t b, i, j
    cdef Py_ssize_t r = c_stack.shape[0]
    cdef Py_ssize_t d = c_stack.shape[1]
    cdef double complex acc, row
    for b in range(r):
        acc = 0
        for i in range(d):
            row = 0
            for j in range(d):
                row = row + c_stack[b, i, j] * v[j]
            acc = acc + u[i].conjugate() * row
        gs[b] = acc.real


def polish_one(double complex[:, :, ::1] c_stack, double[::1] delta,
               double[::1] x, double complex[::1] v, double alpha,
               int n_iters, int power_iters, double grow, double shrink):
    """Run up to n_iters monotone ascent steps on one restart row.

    x and v are updated in place; returns (alpha, accepts, iters).
    """
    cdef Py_ssize_t r = c_stack.shape[0]
    cdef Py_ssize_t d = c_stack.shape[1]
    phi_arr = np.empty((d, d), dtype=np.complex128)
    phi2_arr = np.empty((d, d), dtype=np.complex128)
    u_arr = np.empty(d, dtype=np.complex128)
    w_arr = np.empty(d, dtype=np.complex128)
    vp_arr = np.empty(d, dtype=np.complex128)
    gs_arr = np.empty(r, dtype=np.float64)
    prop_arr = np.empty(r, dtype=np.float64)
    cdef double complex[:, ::1] phi = phi_arr
    cdef double complex[:, ::1] phi2 = phi2_arr
    cdef double complex[::1] u = u_arr
    cdef double complex[::1] work = w_arr
    cdef double complex[::1] vp = vp_arr
    cdef double[::1] gs = gs_arr
    cdef double[::1] prop = prop_arr
    cdef double sigma, f, fp, gn, slin, sp, gb
    cdef Py_ssize_t b, i
    cdef int it, accepts = 0, iters = 0

    _form(c_stack, x, phi)
    for it in range(n_iters):
        if alpha < ALPHA_MIN:
            break
        iters += 1
        sigma = _power(phi, v, u, work, power_iters)
        if sigma == 0.0:
            break
        slin = 0.0
        for b in range(r):
            slin += delta[b] * x[b]
        f = slin / sigma
        _grad_sigma(c_stack, u, v, gs)
        gn = 0.0
        for b in range(r):
            gb = delta[b] / sigma - (f / sigma) * gs[b]
            gs[b] = gb
            gn += gb * gb
        gn = sqrt(gn)
        if gn < 1e-15:
            break
        for b in range(r):
            prop[b] = x[b] + alpha * gs[b] / gn
        for i in range(d):
            vp[i] = v[i]
        _form(c_stack, prop, phi2)
        sp = _power(phi2, vp, u, work, power_iters)
        if sp == 0.0:
            alpha *= shrink
            continue
        slin = 0.0
        for b in range(r):
            slin += delta[b] * prop[b]
        fp = slin / sp
        if fp > f:
            for b in range(r):
                x[b] = prop[b] / sp
            for i in range(d):
                v[i] = vp[i]
            for i in range(d):
                for b in range(d):
                    phi[i, b] = phi2[i, b] / sp
            alpha *= grow
            accepts += 1
        else:
            alpha *= shrink
    return alpha, accepts, iters
