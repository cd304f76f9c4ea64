# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled numeric core: same panel rule, same adaptive scheme, and the
same peak-normalized log-domain integrals as berglab._pycore, with the
inner loops in C.  Results agree with the pure-Python core to rounding.
"""

from libc.math cimport exp, fabs, lgamma, log, log1p, sqrt

BACKEND_NAME = "compiled"

cdef double INF = float("inf")
cdef double NEG_INF = float("-inf")

# Kronrod 15-point abscissae/weights with embedded 7-point Gauss weights,
# expanded to the full symmetric node list in the same order as _pycore.
cdef double[8] XGK_HALF
cdef double[8] WGK_HALF
cdef double[4] WG_HALF

XGK_HALF[0] = 0.991455371120812639206854697526329
XGK_HALF[1] = 0.949107912342758524526189684047851
XGK_HALF[2] = 0.864864423359769072789712788640926
XGK_HALF[3] = 0.741531185599394439863864773280788
XGK_HALF[4] = 0.586087235467691130294144838258730
XGK_HALF[5] = 0.405845151377397166906606412076961
XGK_HALF[6] = 0.207784955007898467600689403773245
XGK_HALF[7] = 0.000000000000000000000000000000000

WGK_HALF[0] = 0.022935322010529224963732008058970
WGK_HALF[1] = 0.063092092629978553290700663189204
WGK_HALF[2] = 0.104790010322250183839876322541518
WGK_HALF[3] = 0.140653259715525918745189590510238
WGK_HALF[4] = 0.169004726639267902826583426598550
WGK_HALF[5] = 0.190350578064785409913256402421014
WGK_HALF[6] = 0.204432940075298892414161999234649
WGK_HALF[7] = 0.209482141084727828012999174891714

WG_HALF[0] = 0.129484966168869693270611432679082
WG_HALF[1] = 0.279705391489276667901467771423780
WG_HALF[2] = 0.381830050505118944950369775488975
WG_HALF[3] = 0.417959183673469387755102040816327

cdef double[15] NODE_X
cdef double[15] NODE_WK
cdef double[15] NODE_WG

cdef void _init_nodes():
    cdef int i, pos = 0
    cdef double wg
    for i in range(8):
        wg = WG_HALF[i // 2] if i % 2 == 1 else 0.0
        if XGK_HALF[i] == 0.0:
            NODE_X[pos] = 0.0
            NODE_WK[pos] = WGK_HALF[i]
            NODE_WG[pos] = WG_HALF[3]
            pos += 1
        else:
            NODE_X[pos] = XGK_HALF[i]
            NODE_WK[pos] = WGK_HALF[i]
            NODE_WG[pos] = wg
            pos += 1
            NODE_X[pos] = -XGK_HALF[i]
            NODE_WK[pos] = WGK_HALF[i]
            NODE_WG[pos] = wg
            pos += 1

_init_nodes()


def node_table():
    """(abscissa, kronrod weight, gauss weight) triples on [-1, 1]."""
    return tuple((NODE_X[i], NODE_WK[i], NODE_WG[i]) for i in range(15))


cdef enum:
    MAX_FACTORS = 16
    MAX_PARAMS = 128
    MAX_EDGES = 12

cdef int RADIAL_POLY = 0
cdef int RADIAL_POWER = 1
cdef int RADIAL_EXP = 2
cdef int VERT_POWER = 0
cdef int VERT_EXPDECAY = 1
cdef int VERT_INVPOW = 2

cdef struct Desc:
    int nfac
    int codes[MAX_FACTORS]
    int offs[MAX_FACTORS]
    double params[MAX_PARAMS]

cdef struct Ctx:
    int mode            # 0 moment finite, 1 moment infinite, 2 laplace, 3 halfline
    Desc desc
    double k
    double alpha
    double t            # laplace transform argument
    double expo
    double scale
    int closed          # halfline: 1 when rho_tilde has the closed form
    double closed_p
    double closed_c
    double inner_rel
    double inner_abs
    int inner_depth
    int inner_fail

cdef int _fill_desc(Desc* d, codes, offs, params) except -1:
    cdef int i
    if len(codes) > MAX_FACTORS or len(params) > MAX_PARAMS:
        raise ValueError("weight descriptor too large for the compiled core")
    d.nfac = len(codes)
    for i in range(d.nfac):
        d.codes[i] = codes[i]
        d.offs[i] = offs[i]
    for i in range(len(params)):
        d.params[i] = params[i]
    return 0


cdef (double, double) _radial_log_weight(Desc* d, double s) noexcept:
    cdef double lv = 0.0, ld = 0.0, v, dv, p, beta
    cdef int i, j, m, off
    for i in range(d.nfac):
        off = d.offs[i]
        if d.codes[i] == RADIAL_POLY:
            m = <int> d.params[off]
            v = 0.0
            dv = 0.0
            for j in range(m - 1, -1, -1):
                dv = dv * s + v
                v = v * s + d.params[off + 1 + j]
            if v <= 0.0:
                return NEG_INF, 0.0
            lv += log(v)
            ld += dv / v
        elif d.codes[i] == RADIAL_POWER:
            p = d.params[off]
            if s >= 1.0:
                return NEG_INF, 0.0
            lv += p * log1p(-s)
            ld += -p / (1.0 - s)
        else:
            beta = d.params[off]
            lv += -beta * s
            ld += -beta
    return lv, ld


cdef double _vertical_log_weight(Desc* d, double y) noexcept:
    cdef double lv = 0.0
    cdef int i, off
    for i in range(d.nfac):
        off = d.offs[i]
        if d.codes[i] == VERT_POWER:
            lv += d.params[off] * log(y)
        elif d.codes[i] == VERT_EXPDECAY:
            lv += -d.params[off] * y
        else:
            lv += -d.params[off] * log1p(y)
    return lv


cdef double _log_integrand(Ctx* ctx, double x) noexcept:
    cdef double g, r, one_minus, lv, lr
    if ctx.mode == 0:
        g = ctx.k * log(x) if ctx.k != 0.0 else 0.0
        if ctx.alpha != 0.0:
            lv, lr = _radial_log_weight(&ctx.desc, x * x)
            g += ctx.alpha * lv
        return g
    one_minus = 1.0 - x
    r = x / one_minus
    g = -2.0 * log(one_minus)
    if ctx.mode == 1:
        if ctx.k != 0.0:
            g += ctx.k * log(r)
        if ctx.alpha != 0.0:
            lv, lr = _radial_log_weight(&ctx.desc, r * r)
            g += ctx.alpha * lv
        return g
    if ctx.mode == 2:
        g += -2.0 * ctx.t * r
        if ctx.alpha != 0.0:
            g += ctx.alpha * _vertical_log_weight(&ctx.desc, r)
        return g
    # mode 3: half-line kernel integrand
    g += -2.0 * ctx.scale * r - _log_rho_tilde(ctx, r)
    if ctx.expo != 0.0:
        g += ctx.expo * log(r)
    return g


cdef double _log_rho_tilde(Ctx* ctx, double r) noexcept:
    cdef Ctx inner
    cdef double lv, err
    cdef int ok
    if ctx.closed:
        return lgamma(ctx.closed_p + 1.0) - (ctx.closed_p + 1.0) * log(ctx.closed_c + 2.0 * r)
    inner.mode = 2
    inner.desc = ctx.desc
    inner.k = 0.0
    inner.alpha = ctx.alpha
    inner.t = r
    inner.expo = 0.0
    inner.scale = 0.0
    inner.closed = 0
    inner.inner_fail = 0
    lv = _run_log_integral(&inner, NEG_INF, &err, &ok, ctx.inner_rel, ctx.inner_abs, ctx.inner_depth)
    if not ok:
        ctx.inner_fail = 1
    return lv


cdef struct Accum:
    double value
    double errsum
    int converged
    int max_depth
    double noise_floor

cdef void _panel(Ctx* ctx, double a, double b, double shift, double* k15, double* g7) noexcept:
    cdef double c = 0.5 * (a + b)
    cdef double h = 0.5 * (b - a)
    cdef double sk = 0.0, sg = 0.0, v, lx
    cdef int i
    for i in range(15):
        lx = _log_integrand(ctx, c + h * NODE_X[i]) - shift
        v = exp(lx) if lx > -745.0 else 0.0
        sk += NODE_WK[i] * v
        if NODE_WG[i] != 0.0:
            sg += NODE_WG[i] * v
    k15[0] = sk * h
    g7[0] = sg * h


cdef void _refine(Ctx* ctx, Accum* acc, double shift, double a, double b,
                  double k15, double g7, int depth, double budget) noexcept:
    cdef double err = fabs(k15 - g7)
    cdef double thresh = budget
    cdef double mid, kl, gl, kr, gr
    if acc.noise_floor * fabs(k15) > thresh:
        thresh = acc.noise_floor * fabs(k15)
    if err <= thresh or depth >= acc.max_depth:
        acc.value += k15
        acc.errsum += err
        if err > thresh:
            acc.converged = 0
        return
    mid = 0.5 * (a + b)
    _panel(ctx, a, mid, shift, &kl, &gl)
    _panel(ctx, mid, b, shift, &kr, &gr)
    _refine(ctx, acc, shift, a, mid, kl, gl, depth + 1, 0.5 * budget)
    _refine(ctx, acc, shift, mid, b, kr, gr, depth + 1, 0.5 * budget)


cdef double _adapt(Ctx* ctx, double shift, double* edges, int nedges,
                   double rel_tol, double abs_tol, int max_depth,
                   double noise_floor, double* err_out, int* ok_out) noexcept:
    cdef double[MAX_EDGES] ck
    cdef double[MAX_EDGES] cg
    cdef double estimate = 0.0, tol_global, total_width
    cdef Accum acc
    cdef int i, attempt
    for i in range(nedges - 1):
        _panel(ctx, edges[i], edges[i + 1], shift, &ck[i], &cg[i])
        estimate += ck[i]
    total_width = edges[nedges - 1] - edges[0]
    for attempt in range(2):
        tol_global = rel_tol * fabs(estimate)
        if abs_tol > tol_global:
            tol_global = abs_tol
        acc.value = 0.0
        acc.errsum = 0.0
        acc.converged = 1
        acc.max_depth = max_depth
        acc.noise_floor = noise_floor
        for i in range(nedges - 1):
            _refine(ctx, &acc, shift, edges[i], edges[i + 1], ck[i], cg[i], 0,
                    tol_global * (edges[i + 1] - edges[i]) / total_width)
        if fabs(acc.value) > 0.5 * fabs(estimate):
            break
        estimate = acc.value
    err_out[0] = acc.errsum
    ok_out[0] = acc.converged
    return acc.value


cdef double _scan_peak(Ctx* ctx, double lo, double hi, double* seeds, int nseeds,
                       double* peak_out) noexcept:
    cdef int n = 65
    cdef double width = hi - lo
    cdef double best_x = lo + width * 0.5 / n
    cdef double best_v = NEG_INF
    cdef double x, v, a, b, x1, x2, f1, f2, invphi
    cdef int i
    for i in range(n):
        x = lo + width * (i + 0.5) / n
        v = _log_integrand(ctx, x)
        if v > best_v:
            best_v = v
            best_x = x
    for i in range(nseeds):
        x = seeds[i]
        if lo < x < hi:
            v = _log_integrand(ctx, x)
            if v > best_v:
                best_v = v
                best_x = x
    cdef double step = width / n
    a = best_x - step
    if a < lo:
        a = lo
    b = best_x + step
    if b > hi:
        b = hi
    invphi = (sqrt(5.0) - 1.0) / 2.0
    x1 = b - invphi * (b - a)
    x2 = a + invphi * (b - a)
    f1 = _log_integrand(ctx, x1)
    f2 = _log_integrand(ctx, x2)
    for i in range(40):
        if f1 < f2:
            a = x1
            x1 = x2
            f1 = f2
            x2 = a + invphi * (b - a)
            f2 = _log_integrand(ctx, x2)
        else:
            b = x2
            x2 = x1
            f2 = f1
            x1 = b - invphi * (b - a)
            f1 = _log_integrand(ctx, x1)
    x = 0.5 * (a + b)
    v = _log_integrand(ctx, x)
    if v < best_v:
        x = best_x
        v = best_v
    peak_out[0] = x
    return v


cdef double _peak_width(Ctx* ctx, double x_peak, double shift, double lo, double hi) noexcept:
    cdef double span = hi - lo
    cdef double h = span * 1e-6
    cdef double a, b, curv, xa, xb
    while h < 0.25 * span:
        xa = x_peak - h
        if xa < lo + 0.25 * h:
            xa = lo + 0.25 * h
        xb = x_peak + h
        if xb > hi - 0.25 * h:
            xb = hi - 0.25 * h
        a = _log_integrand(ctx, xa)
        b = _log_integrand(ctx, xb)
        curv = a + b - 2.0 * shift
        if curv < -1e-6:
            return h / sqrt(-curv)
        h *= 8.0
    return -1.0


cdef void _sort_edges(double* edges, int n) noexcept:
    cdef int i, j
    cdef double key
    for i in range(1, n):
        key = edges[i]
        j = i - 1
        while j >= 0 and edges[j] > key:
            edges[j + 1] = edges[j]
            j -= 1
        edges[j + 1] = key


cdef double _run_log_integral(Ctx* ctx, double seed, double* err_out, int* ok_out,
                              double rel_tol, double abs_tol, int max_depth) noexcept:
    """Mirror of _pycore._log_domain_integral over (0, 1)."""
    cdef double lo = 0.0, hi = 1.0
    cdef double[1] seeds
    cdef int nseeds = 0
    cdef double x_peak, shift, width, noise_floor, value, e, spread
    cdef double[MAX_EDGES] edges
    cdef int nedges = 0, i, ok, m
    if seed == seed and seed != NEG_INF and lo < seed < hi:  # not NaN, in range
        seeds[0] = seed
        nseeds = 1
    shift = _scan_peak(ctx, lo, hi, seeds, nseeds, &x_peak)
    if shift == NEG_INF:
        err_out[0] = 0.0
        ok_out[0] = 1
        return NEG_INF
    noise_floor = 2.3e-16 * (fabs(shift) + 716.0)
    edges[nedges] = lo; nedges += 1
    edges[nedges] = hi; nedges += 1
    edges[nedges] = x_peak; nedges += 1
    width = _peak_width(ctx, x_peak, shift, lo, hi)
    if width > 0.0:
        spread = 1.0
        for i in range(3):
            e = x_peak - spread * width
            if e < lo: e = lo
            if e > hi: e = hi
            edges[nedges] = e; nedges += 1
            e = x_peak + spread * width
            if e < lo: e = lo
            if e > hi: e = hi
            edges[nedges] = e; nedges += 1
            spread *= 8.0
    _sort_edges(edges, nedges)
    # drop duplicate edges from clipping
    m = 1
    for i in range(1, nedges):
        if edges[i] != edges[m - 1]:
            edges[m] = edges[i]
            m += 1
    nedges = m
    value = _adapt(ctx, shift, edges, nedges, rel_tol, abs_tol, max_depth, noise_floor, &e, &ok)
    if value <= 0.0:
        err_out[0] = INF
        ok_out[0] = 0
        return NEG_INF
    err_out[0] = e / value
    ok_out[0] = ok
    return shift + log(value)


cdef double _stationary_seed(Desc* d, double k, double alpha) noexcept:
    cdef double target, lo, hi, mid, beta, lv, ld
    cdef int i, all_exp
    if alpha <= 0.0 or k < 0.0:
        return -1.0
    target = 0.5 * k / alpha
    all_exp = 1
    beta = 0.0
    for i in range(d.nfac):
        if d.codes[i] != RADIAL_EXP:
            all_exp = 0
        else:
            beta += d.params[d.offs[i]]
    if all_exp:
        return sqrt(target / beta) if beta > 0.0 else -1.0
    lo = 1e-12
    hi = 1.0 - 1e-12
    lv, ld = _radial_log_weight(d, lo)
    if -lo * ld > target:
        return -1.0
    lv, ld = _radial_log_weight(d, hi)
    if -hi * ld < target:
        return -1.0
    for i in range(80):
        mid = 0.5 * (lo + hi)
        lv, ld = _radial_log_weight(d, mid)
        if -mid * ld < target:
            lo = mid
        else:
            hi = mid
    return sqrt(0.5 * (lo + hi))


def moment_log(codes, offs, params, infinite, k, alpha, rel_tol, abs_tol, max_depth):
    """log of the weight moment; mirrors the pure-Python core."""
    cdef Ctx ctx
    cdef double err, seed, r_star, lv
    cdef int ok
    _fill_desc(&ctx.desc, codes, offs, params)
    ctx.k = <double> k
    ctx.alpha = alpha
    ctx.inner_fail = 0
    r_star = _stationary_seed(&ctx.desc, <double> k, alpha)
    if infinite:
        ctx.mode = 1
        seed = r_star / (1.0 + r_star) if r_star > 0.0 else -1.0
    else:
        ctx.mode = 0
        seed = r_star if 0.0 < r_star < 1.0 else -1.0
    lv = _run_log_integral(&ctx, seed, &err, &ok, rel_tol, abs_tol, max_depth)
    return lv, err, bool(ok)


def moment_table_log(codes, offs, params, infinite, ks, alpha, rel_tol, abs_tol, max_depth):
    return [
        moment_log(codes, offs, params, infinite, k, alpha, rel_tol, abs_tol, max_depth)
        for k in ks
    ]


def vlaplace_log(vcodes, voffs, vparams, alpha, t, rel_tol, abs_tol, max_depth):
    """log of the one-sided transform of rho^alpha at t."""
    cdef Ctx ctx
    cdef double err, lv
    cdef int ok
    _fill_desc(&ctx.desc, vcodes, voffs, vparams)
    ctx.mode = 2
    ctx.k = 0.0
    ctx.alpha = alpha
    ctx.t = t
    ctx.inner_fail = 0
    lv = _run_log_integral(&ctx, -1.0, &err, &ok, rel_tol, abs_tol, max_depth)
    return lv, err, bool(ok)


def halfline_log(vcodes, voffs, vparams, alpha, expo, scale, closed_pc,
                 rel_tol, abs_tol, max_depth):
    """log of: integral r^expo e^(-2 scale r) / rho_tilde(r) dr over (0, inf)."""
    cdef Ctx ctx
    cdef double err, lv
    cdef int ok
    _fill_desc(&ctx.desc, vcodes, voffs, vparams)
    ctx.mode = 3
    ctx.k = 0.0
    ctx.alpha = alpha
    ctx.expo = expo
    ctx.scale = scale
    ctx.inner_fail = 0
    if closed_pc is not None:
        ctx.closed = 1
        ctx.closed_p = closed_pc[0]
        ctx.closed_c = closed_pc[1]
    else:
        ctx.closed = 0
        ctx.inner_rel = rel_tol / 10.0
        ctx.inner_abs = abs_tol
        ctx.inner_depth = max_depth
    lv = _run_log_integral(&ctx, -1.0, &err, &ok, rel_tol, abs_tol, max_depth)
    return lv, err, bool(ok), not bool(ctx.inner_fail)
