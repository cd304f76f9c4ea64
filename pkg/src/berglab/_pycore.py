"""Pure-Python numeric core.

Reference implementation of the hot kernels: an embedded 15/7-point panel
rule with bisection adaptivity, and peak-normalized log-domain integrals for
weight moments, vertical Laplace transforms, and half-line kernel integrals.
The compiled core (berglab._fastcore) implements the same algorithms with the
same constants; either can back the public API.
"""

import math

BACKEND_NAME = "python"

# Kronrod 15-point abscissae (positive half, descending) and weights, with
# the embedded 7-point Gauss weights on the odd-indexed abscissae.
_XGK_HALF = (
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
)
_WGK_HALF = (
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
)
_WG_HALF = (
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
)


def _build_nodes():
    nodes = []
    for i, x in enumerate(_XGK_HALF):
        wg = _WG_HALF[i // 2] if i % 2 == 1 else 0.0
        if x == 0.0:
            nodes.append((0.0, _WGK_HALF[i], _WG_HALF[3]))
        else:
            nodes.append((x, _WGK_HALF[i], wg))
            nodes.append((-x, _WGK_HALF[i], wg))
    return tuple(nodes)


_NODES = _build_nodes()


def node_table():
    """(abscissa, kronrod weight, gauss weight) triples on [-1, 1]."""
    return _NODES


def _panel(f, a, b):
    c = 0.5 * (a + b)
    h = 0.5 * (b - a)
    k15 = 0.0
    g7 = 0.0
    for x, wk, wg in _NODES:
        v = f(c + h * x)
        k15 += wk * v
        if wg:
            g7 += wg * v
    return k15 * h, g7 * h


def _adapt(f, edges, rel_tol, abs_tol, max_depth, noise_floor=1e-15):
    """Adaptive bisection over the pre-split panels.

    Local acceptance budget is the global tolerance split proportionally to
    panel width, which keeps the refinement tree (and hence the result)
    deterministic.  A panel whose high/low difference is at its own rounding
    floor (noise_floor times its value) cannot be improved by splitting and
    is accepted as converged.  Returns (value, error_sum, converged).
    """
    coarse = [_panel(f, a, b) for a, b in zip(edges, edges[1:])]
    estimate = sum(k for k, _ in coarse)
    total_width = edges[-1] - edges[0]

    for _ in range(2):
        tol_global = max(rel_tol * abs(estimate), abs_tol)
        value = 0.0
        errsum = 0.0
        converged = True

        def refine(a, b, k15, g7, depth, budget):
            nonlocal value, errsum, converged
            err = abs(k15 - g7)
            if err <= max(budget, noise_floor * abs(k15)) or depth >= max_depth:
                value += k15
                errsum += err
                if err > max(budget, noise_floor * abs(k15)):
                    converged = False
                return
            mid = 0.5 * (a + b)
            kl, gl = _panel(f, a, mid)
            kr, gr = _panel(f, mid, b)
            refine(a, mid, kl, gl, depth + 1, 0.5 * budget)
            refine(mid, b, kr, gr, depth + 1, 0.5 * budget)

        for (a, b), (k15, g7) in zip(zip(edges, edges[1:]), coarse):
            refine(a, b, k15, g7, 0, tol_global * (b - a) / total_width)

        if abs(value) > 0.5 * abs(estimate):
            return value, errsum, converged
        # Coarse estimate was badly off; redo budgets with the refined value.
        estimate = value
    return value, errsum, converged


def _scan_peak(logf, lo, hi, seeds, n=65):
    """Locate the maximum of logf on (lo, hi) by grid scan + golden refinement."""
    width = hi - lo
    points = [lo + width * (i + 0.5) / n for i in range(n)]
    for s in seeds:
        if lo < s < hi:
            points.append(s)
    best_x = points[0]
    best_v = -math.inf
    for x in points:
        v = logf(x)
        if v > best_v:
            best_v, best_x = v, x
    # Golden refinement only ever evaluates strictly inside (a, b).
    step = width / n
    a = max(lo, best_x - step)
    b = min(hi, best_x + step)
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    x1 = b - invphi * (b - a)
    x2 = a + invphi * (b - a)
    f1, f2 = logf(x1), logf(x2)
    for _ in range(40):
        if f1 < f2:
            a, x1, f1 = x1, x2, f2
            x2 = a + invphi * (b - a)
            f2 = logf(x2)
        else:
            b, x2, f2 = x2, x1, f1
            x1 = b - invphi * (b - a)
            f1 = logf(x1)
    x = 0.5 * (a + b)
    v = logf(x)
    if v < best_v:
        x, v = best_x, best_v
    return x, v


def _peak_width(logf, x_peak, shift, lo, hi):
    """Gaussian width estimate 1/sqrt(-g'') at the peak, or None when flat."""
    span = hi - lo
    h = span * 1e-6
    while h < 0.25 * span:
        a = logf(max(x_peak - h, lo + 0.25 * h))
        b = logf(min(x_peak + h, hi - 0.25 * h))
        curv = a + b - 2.0 * shift
        if curv < -1e-6:
            return h / math.sqrt(-curv)
        h *= 8.0
    return None


def _log_domain_integral(logf, lo, hi, seeds, rel_tol, abs_tol, max_depth):
    """Integral of exp(logf) over (lo, hi), peak-normalized.

    The panel pre-split brackets the peak at its own width so that a peak
    much narrower than the domain cannot slip between panel nodes with a
    misleadingly small high/low difference.  Returns
    (log_value, relative_error_estimate, converged).
    """
    x_peak, shift = _scan_peak(logf, lo, hi, seeds)
    if shift == -math.inf:
        return -math.inf, 0.0, True

    def f(x):
        v = logf(x) - shift
        return math.exp(v) if v > -745.0 else 0.0

    # exp(logf - shift) carries relative noise of order eps * |logf|, which
    # bounds the accuracy any refinement can reach.
    noise_floor = 2.3e-16 * (abs(shift) + 716.0)
    edges = {lo, hi, x_peak}
    width = _peak_width(logf, x_peak, shift, lo, hi)
    if width is not None:
        for spread in (1.0, 8.0, 64.0):
            edges.add(min(max(x_peak - spread * width, lo), hi))
            edges.add(min(max(x_peak + spread * width, lo), hi))
    value, errsum, converged = _adapt(f, sorted(edges), rel_tol, abs_tol, max_depth, noise_floor)
    if value <= 0.0:
        return -math.inf, math.inf, False
    return shift + math.log(value), errsum / value, converged


# --- weight descriptors ---------------------------------------------------

RADIAL_POLY, RADIAL_POWER, RADIAL_EXP = 0, 1, 2
VERT_POWER, VERT_EXPDECAY, VERT_INVPOW = 0, 1, 2


def _radial_log_weight(codes, offs, params, s):
    """(log phi(s), d/ds log phi(s)) for a flattened radial descriptor."""
    lv = 0.0
    ld = 0.0
    for code, off in zip(codes, offs):
        if code == RADIAL_POLY:
            m = int(params[off])
            v = 0.0
            d = 0.0
            for i in range(m - 1, -1, -1):
                d = d * s + v
                v = v * s + params[off + 1 + i]
            if v <= 0.0:
                return -math.inf, 0.0
            lv += math.log(v)
            ld += d / v
        elif code == RADIAL_POWER:
            p = params[off]
            if s >= 1.0:
                return -math.inf, 0.0
            lv += p * math.log1p(-s)
            ld += -p / (1.0 - s)
        else:
            beta = params[off]
            lv += -beta * s
            ld += -beta
    return lv, ld


def _vertical_log_weight(codes, offs, params, y):
    """log rho(y) for a flattened vertical descriptor (y > 0)."""
    lv = 0.0
    for code, off in zip(codes, offs):
        if code == VERT_POWER:
            lv += params[off] * math.log(y)
        elif code == VERT_EXPDECAY:
            lv += -params[off] * y
        else:
            lv += -params[off] * math.log1p(y)
    return lv


def _radial_stationary_seed(codes, offs, params, k, alpha):
    """Stationary point of k*log(r) + alpha*log(phi(r^2)), as r, or None.

    Solves k/2 = alpha * psi(s), psi = -s (log phi)'(s), by bisection; psi is
    increasing for weights satisfying the curvature hypothesis, and the seed
    is only advisory when it is not.
    """
    if alpha <= 0.0 or k < 0:
        return None
    target = 0.5 * k / alpha

    def psi(s):
        return -s * _radial_log_weight(codes, offs, params, s)[1]

    lo, hi = 1e-12, 1.0 - 1e-12
    if all(code == RADIAL_EXP for code in codes):
        beta = sum(params[off] for off in offs)
        return math.sqrt(target / beta) if beta > 0 else None
    if psi(lo) > target or psi(hi) < target:
        return None
    for _ in range(80):
        mid = 0.5 * (lo + hi)
        if psi(mid) < target:
            lo = mid
        else:
            hi = mid
    return math.sqrt(0.5 * (lo + hi))


def moment_log(codes, offs, params, infinite, k, alpha, rel_tol, abs_tol, max_depth):
    """log of the weight moment: integral of r^k phi(r^2)^alpha dr.

    Finite support integrates over (0, 1); infinite support maps
    r = u/(1-u) onto (0, 1).  Returns (log_value, rel_err, converged).
    """
    r_star = _radial_stationary_seed(codes, offs, params, k, alpha)

    if not infinite:

        def logf(r):
            g = k * math.log(r) if k else 0.0
            if alpha:
                g += alpha * _radial_log_weight(codes, offs, params, r * r)[0]
            return g

        seeds = [r_star] if r_star is not None and r_star < 1.0 else []
        return _log_domain_integral(logf, 0.0, 1.0, seeds, rel_tol, abs_tol, max_depth)

    def logf_u(u):
        one_minus = 1.0 - u
        r = u / one_minus
        g = -2.0 * math.log(one_minus)
        if k:
            g += k * math.log(r)
        if alpha:
            g += alpha * _radial_log_weight(codes, offs, params, r * r)[0]
        return g

    seeds = [r_star / (1.0 + r_star)] if r_star is not None else []
    return _log_domain_integral(logf_u, 0.0, 1.0, seeds, rel_tol, abs_tol, max_depth)


def moment_table_log(codes, offs, params, infinite, ks, alpha, rel_tol, abs_tol, max_depth):
    return [
        moment_log(codes, offs, params, infinite, k, alpha, rel_tol, abs_tol, max_depth)
        for k in ks
    ]


def vlaplace_log(vcodes, voffs, vparams, alpha, t, rel_tol, abs_tol, max_depth):
    """log of the one-sided transform: integral of rho(y)^alpha e^(-2 t y) dy."""

    def logf_u(u):
        one_minus = 1.0 - u
        y = u / one_minus
        g = -2.0 * math.log(one_minus) - 2.0 * t * y
        if alpha:
            g += alpha * _vertical_log_weight(vcodes, voffs, vparams, y)
        return g

    return _log_domain_integral(logf_u, 0.0, 1.0, [], rel_tol, abs_tol, max_depth)


def halfline_log(
    vcodes,
    voffs,
    vparams,
    alpha,
    expo,
    scale,
    closed_pc,
    rel_tol,
    abs_tol,
    max_depth,
):
    """log of: integral over (0, inf) of r^expo e^(-2 scale r) / rho_tilde(r) dr.

    rho_tilde is the transform of rho^alpha.  When closed_pc = (P, C) is
    given, rho_tilde(r) = Gamma(P+1) / (C + 2r)^(P+1) in closed form;
    otherwise it is computed by the nested transform at a tenth of the outer
    tolerance.  Returns (log_value, rel_err, converged, inner_ok).
    """
    inner_ok = True
    cache = {}

    if closed_pc is not None:
        p_big, c_big = closed_pc
        lg = math.lgamma(p_big + 1.0)

        def log_rho_tilde(r):
            return lg - (p_big + 1.0) * math.log(c_big + 2.0 * r)

    else:
        inner_rel = rel_tol / 10.0

        def log_rho_tilde(r):
            nonlocal inner_ok
            got = cache.get(r)
            if got is None:
                lv, _, ok = vlaplace_log(
                    vcodes, voffs, vparams, alpha, r, inner_rel, abs_tol, max_depth
                )
                if not ok:
                    inner_ok = False
                got = lv
                cache[r] = got
            return got

    def logf_u(u):
        one_minus = 1.0 - u
        r = u / one_minus
        g = -2.0 * math.log(one_minus) - 2.0 * scale * r - log_rho_tilde(r)
        if expo:
            g += expo * math.log(r)
        return g

    log_value, rel_err, converged = _log_domain_integral(
        logf_u, 0.0, 1.0, [], rel_tol, abs_tol, max_depth
    )
    return log_value, rel_err, converged, inner_ok


def integrate_callable(f, a, b, infinite, rel_tol, abs_tol, max_depth):
    """Linear-domain adaptive integral of a user callable.

    Semi-infinite integrals map r = u/(1-u) so the same panel engine applies.
    Returns (value, error_estimate, converged).
    """
    if infinite:

        def g(u):
            one_minus = 1.0 - u
            return f(a + u / one_minus) / (one_minus * one_minus)

        edges = [0.0, 0.25, 0.5, 0.75, 0.9, 0.99, 1.0]
        return _adapt(g, edges, rel_tol, abs_tol, max_depth)
    return _adapt(f, [a, 0.5 * (a + b), b], rel_tol, abs_tol, max_depth)
