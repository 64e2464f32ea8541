# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled integration kernel; same contract as ``_kernels_py``."""
from libc.math cimport sqrt
from libc.stdlib cimport malloc, realloc, free
from array import array

cdef enum:
    CONVERGED = 0
    REACHED_TMAX = 1
    STEP_UNDERFLOW = 2
    MAX_STEPS = 3

cdef double MIN_STEP = 1e-12


cdef struct Field:
    int np_
    int nq
    const int* pex
    const int* pey
    const double* pc
    const int* qex
    const int* qey
    const double* qc
    int maxdeg
    double* up
    double* vp


cdef inline void field_eval(Field* f, double u, double v, double* du, double* dv) noexcept nogil:
    cdef int k
    cdef double ps = 0.0, qs = 0.0
    f.up[0] = 1.0
    f.vp[0] = 1.0
    for k in range(1, f.maxdeg + 1):
        f.up[k] = f.up[k - 1] * u
        f.vp[k] = f.vp[k - 1] * v
    for k in range(f.np_):
        ps += f.pc[k] * f.up[f.pex[k]] * f.vp[f.pey[k]]
    for k in range(f.nq):
        qs += f.qc[k] * f.up[f.qex[k]] * f.vp[f.qey[k]]
    du[0] = -u - ps
    dv[0] = -v - qs


cdef inline void rk4(Field* f, double u, double v, double h, double* ou, double* ov) noexcept nogil:
    cdef double k1u, k1v, k2u, k2v, k3u, k3v, k4u, k4v
    field_eval(f, u, v, &k1u, &k1v)
    field_eval(f, u + 0.5 * h * k1u, v + 0.5 * h * k1v, &k2u, &k2v)
    field_eval(f, u + 0.5 * h * k2u, v + 0.5 * h * k2v, &k3u, &k3v)
    field_eval(f, u + h * k3u, v + h * k3v, &k4u, &k4v)
    ou[0] = u + h / 6.0 * (k1u + 2.0 * k2u + 2.0 * k3u + k4u)
    ov[0] = v + h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v)


cdef int setup_field(Field* f, const int[::1] pex, const int[::1] pey, const double[::1] pc,
                     const int[::1] qex, const int[::1] qey, const double[::1] qc) except -1:
    cdef int k, m = 0
    f.np_ = pc.shape[0]
    f.nq = qc.shape[0]
    f.pex = &pex[0]
    f.pey = &pey[0]
    f.pc = &pc[0]
    f.qex = &qex[0]
    f.qey = &qey[0]
    f.qc = &qc[0]
    for k in range(f.np_):
        m = max(m, pex[k], pey[k])
    for k in range(f.nq):
        m = max(m, qex[k], qey[k])
    f.maxdeg = m
    f.up = <double*> malloc((m + 1) * sizeof(double))
    f.vp = <double*> malloc((m + 1) * sizeof(double))
    if f.up == NULL or f.vp == NULL:
        free(f.up)
        free(f.vp)
        raise MemoryError()
    return 0


def _buffers(ex, ey, c):
    if len(c) == 0:
        # pad so &buf[0] is valid; a zero coefficient adds exactly 0.0
        return array("i", [0]), array("i", [0]), array("d", [0.0])
    return array("i", ex), array("i", ey), array("d", c)


def field_kernel(pex, pey, pc, qex, qey, qc, double u, double v):
    cdef Field f
    cdef double du, dv
    a = _buffers(pex, pey, pc)
    b = _buffers(qex, qey, qc)
    setup_field(&f, a[0], a[1], a[2], b[0], b[1], b[2])
    try:
        field_eval(&f, u, v, &du, &dv)
    finally:
        free(f.up)
        free(f.vp)
    return du, dv


def integrate_kernel(pex, pey, pc, qex, qey, qc, double u0, double v0,
                     double t_max, double h0, double tol, long max_steps):
    cdef Field f
    cdef double t = 0.0, u = u0, v = v0, h = h0, step, err, du, dv, norm
    cdef double fu, fv, hu, hv, su, sv
    cdef long steps = 0, cap = 1024, n = 1, i
    cdef int status = REACHED_TMAX
    cdef double* buf
    cdef double* grown

    a = _buffers(pex, pey, pc)
    b = _buffers(qex, qey, qc)
    setup_field(&f, a[0], a[1], a[2], b[0], b[1], b[2])
    buf = <double*> malloc(3 * cap * sizeof(double))
    if buf == NULL:
        free(f.up)
        free(f.vp)
        raise MemoryError()
    buf[0] = t
    buf[1] = u
    buf[2] = v
    with nogil:
        while True:
            norm = sqrt(u * u + v * v)
            if norm < tol:
                status = CONVERGED
                break
            if t_max - t <= MIN_STEP:
                status = REACHED_TMAX
                break
            if steps >= max_steps:
                status = MAX_STEPS
                break
            step = h
            if t + step > t_max:
                step = t_max - t
            rk4(&f, u, v, step, &fu, &fv)
            rk4(&f, u, v, 0.5 * step, &hu, &hv)
            rk4(&f, hu, hv, 0.5 * step, &su, &sv)
            du = su - fu
            dv = sv - fv
            err = sqrt(du * du + dv * dv) / (norm if norm > 1.0 else 1.0)
            if not err <= tol:
                h = 0.5 * step
                if h < MIN_STEP:
                    status = STEP_UNDERFLOW
                    break
                continue
            t += step
            u = su
            v = sv
            steps += 1
            if n == cap:
                cap *= 2
                grown = <double*> realloc(buf, 3 * cap * sizeof(double))
                if grown == NULL:
                    status = -1
                    break
                buf = grown
            buf[3 * n] = t
            buf[3 * n + 1] = u
            buf[3 * n + 2] = v
            n += 1
            if err < tol / 32.0:
                h = 2.0 * step
            else:
                h = step
    free(f.up)
    free(f.vp)
    if status == -1:
        free(buf)
        raise MemoryError()
    ts = [buf[3 * i] for i in range(n)]
    us = [buf[3 * i + 1] for i in range(n)]
    vs = [buf[3 * i + 2] for i in range(n)]
    free(buf)
    return ts, us, vs, status
