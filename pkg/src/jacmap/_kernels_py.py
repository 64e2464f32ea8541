"""Pure-Python integration kernel.

Mirrors ``_kernels.pyx`` operation for operation; used when the compiled
extension is unavailable or ``JACMAP_PURE_PYTHON=1`` is set.

Polynomials are passed as parallel sequences ``(ex, ey, coeff)``.
"""
from math import sqrt

CONVERGED = 0
REACHED_TMAX = 1
STEP_UNDERFLOW = 2
MAX_STEPS = 3

MIN_STEP = 1e-12


def _powers(z, n):
    out = [1.0] * (n + 1)
    for k in range(1, n + 1):
        out[k] = out[k - 1] * z
    return out


def _make_field(pex, pey, pc, qex, qey, qc):
    pterms = list(zip(pex, pey, pc))
    qterms = list(zip(qex, qey, qc))
    maxdeg = max([0] + list(pex) + list(pey) + list(qex) + list(qey))

    def field(u, v):
        up = _powers(u, maxdeg)
        vp = _powers(v, maxdeg)
        ps = 0.0
        for ex, ey, c in pterms:
            ps += c * up[ex] * vp[ey]
        qs = 0.0
        for ex, ey, c in qterms:
            qs += c * up[ex] * vp[ey]
        return -u - ps, -v - qs

    return field


def field_kernel(pex, pey, pc, qex, qey, qc, u, v):
    return _make_field(pex, pey, pc, qex, qey, qc)(u, v)


def _rk4(field, u, v, h):
    k1u, k1v = field(u, v)
    k2u, k2v = field(u + 0.5 * h * k1u, v + 0.5 * h * k1v)
    k3u, k3v = field(u + 0.5 * h * k2u, v + 0.5 * h * k2v)
    k4u, k4v = field(u + h * k3u, v + h * k3v)
    return (u + h / 6.0 * (k1u + 2.0 * k2u + 2.0 * k3u + k4u),
            v + h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v))


def integrate_kernel(pex, pey, pc, qex, qey, qc, u0, v0, t_max, h0, tol, max_steps):
    """Step-doubling RK4 from ``(u0, v0)``.

    The difference between one full step and two half steps, scaled by
    ``max(1, |state|)``, must not exceed ``tol``; otherwise the step is halved.

    Returns ``(ts, us, vs, status)``.
    """
    field = _make_field(pex, pey, pc, qex, qey, qc)
    t, u, v, h = 0.0, float(u0), float(v0), float(h0)
    ts, us, vs = [t], [u], [v]
    steps = 0
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
        fu, fv = _rk4(field, u, v, step)
        hu, hv = _rk4(field, u, v, 0.5 * step)
        su, sv = _rk4(field, hu, hv, 0.5 * step)
        du, dv = su - fu, sv - fv
        # absolute near the origin, relative far from it
        err = sqrt(du * du + dv * dv) / (norm if norm > 1.0 else 1.0)
        if not err <= tol:  # also catches nan
            h = 0.5 * step
            if h < MIN_STEP:
                status = STEP_UNDERFLOW
                break
            continue
        t += step
        u, v = su, sv
        steps += 1
        ts.append(t)
        us.append(u)
        vs.append(v)
        h = 2.0 * step if err < tol / 32.0 else step
    return ts, us, vs, status
