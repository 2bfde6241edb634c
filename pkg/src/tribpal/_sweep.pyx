# cython: language_level=3, boundscheck=False, wraparound=False
"""MPFR kernel for batches of Baker-Davenport reductions sharing kappa, A and B.

Each case is given by an integer Y with mu = log(Y/9) / log(alpha).  All
arithmetic uses directed rounding, mirroring the ball arithmetic of the
pure-Python path.
"""

cdef extern from "gmp.h":
    pass

cdef extern from "mpfr.h":
    ctypedef struct __mpfr_struct:
        pass
    ctypedef __mpfr_struct mpfr_t[1]
    ctypedef __mpfr_struct *mpfr_ptr
    ctypedef long mpfr_prec_t
    ctypedef enum mpfr_rnd_t:
        MPFR_RNDN
        MPFR_RNDZ
        MPFR_RNDU
        MPFR_RNDD

    void mpfr_init2(mpfr_ptr x, mpfr_prec_t prec)
    void mpfr_clear(mpfr_ptr x)
    int mpfr_set(mpfr_ptr rop, mpfr_ptr op, mpfr_rnd_t rnd)
    int mpfr_set_str(mpfr_ptr rop, const char *s, int base, mpfr_rnd_t rnd)
    int mpfr_set_ui(mpfr_ptr rop, unsigned long op, mpfr_rnd_t rnd)
    int mpfr_mul_2si(mpfr_ptr rop, mpfr_ptr op, long e, mpfr_rnd_t rnd)
    int mpfr_add(mpfr_ptr rop, mpfr_ptr a, mpfr_ptr b, mpfr_rnd_t rnd)
    int mpfr_sub(mpfr_ptr rop, mpfr_ptr a, mpfr_ptr b, mpfr_rnd_t rnd)
    int mpfr_mul(mpfr_ptr rop, mpfr_ptr a, mpfr_ptr b, mpfr_rnd_t rnd)
    int mpfr_div(mpfr_ptr rop, mpfr_ptr a, mpfr_ptr b, mpfr_rnd_t rnd)
    int mpfr_ui_sub(mpfr_ptr rop, unsigned long a, mpfr_ptr b, mpfr_rnd_t rnd)
    int mpfr_log(mpfr_ptr rop, mpfr_ptr op, mpfr_rnd_t rnd)
    int mpfr_floor(mpfr_ptr rop, mpfr_ptr op)
    int mpfr_ceil(mpfr_ptr rop, mpfr_ptr op)
    int mpfr_cmp(mpfr_ptr a, mpfr_ptr b)
    int mpfr_cmp_ui(mpfr_ptr a, unsigned long b)
    int mpfr_cmp_d(mpfr_ptr a, double b)
    int mpfr_sgn(mpfr_ptr a)
    double mpfr_get_d(mpfr_ptr op, mpfr_rnd_t rnd)
    long mpfr_get_si(mpfr_ptr op, mpfr_rnd_t rnd)

# case status codes
OK = 0
NO_CONVERGENT = 1
AMBIGUOUS = 2


cdef void _set_exact(mpfr_ptr dst, x):
    """Load a gmpy2 mpfr or Python int exactly (dst must be wide enough)."""
    if isinstance(x, int):
        m, e = x, 0
    else:
        m, e = x.as_mantissa_exp()
        m, e = int(m), int(e)
    s = format(m, "x").encode()
    mpfr_set_str(dst, s, 16, MPFR_RNDN)
    if e:
        mpfr_mul_2si(dst, dst, e, MPFR_RNDN)


cdef class _Interval:
    cdef mpfr_t lo
    cdef mpfr_t hi

    def __cinit__(self, long bits):
        mpfr_init2(self.lo, bits)
        mpfr_init2(self.hi, bits)

    def __dealloc__(self):
        mpfr_clear(self.lo)
        mpfr_clear(self.hi)

    def load(self, lo, hi):
        _set_exact(self.lo, lo)
        _set_exact(self.hi, hi)


cdef int _distance(mpfr_ptr out_lo, mpfr_ptr out_hi, mpfr_ptr x_lo, mpfr_ptr x_hi,
                   mpfr_ptr f, mpfr_ptr g, mpfr_ptr a, mpfr_ptr b):
    """Certified nearest-integer distance of [x_lo, x_hi]; returns 0 or AMBIGUOUS."""
    mpfr_floor(f, x_lo)
    mpfr_floor(g, x_hi)
    mpfr_sub(a, x_lo, f, MPFR_RNDD)
    if mpfr_cmp(f, g) == 0:
        mpfr_sub(b, x_hi, f, MPFR_RNDU)
        if mpfr_cmp_d(b, 0.5) <= 0:
            mpfr_set(out_lo, a, MPFR_RNDD)
            mpfr_set(out_hi, b, MPFR_RNDU)
            return 0
        if mpfr_cmp_d(a, 0.5) >= 0:
            mpfr_ui_sub(out_lo, 1, b, MPFR_RNDD)
            mpfr_ui_sub(out_hi, 1, a, MPFR_RNDU)
            return 0
        return AMBIGUOUS
    # g == f + 1 ?
    mpfr_sub(b, g, f, MPFR_RNDN)
    if mpfr_cmp_ui(b, 1) != 0 or mpfr_cmp_d(a, 0.5) <= 0:
        return AMBIGUOUS
    mpfr_sub(b, x_hi, g, MPFR_RNDU)
    if mpfr_cmp_d(b, 0.5) >= 0:
        return AMBIGUOUS
    mpfr_set_ui(out_lo, 0, MPFR_RNDN)
    mpfr_ui_sub(out_hi, 1, a, MPFR_RNDU)
    if mpfr_cmp(b, out_hi) > 0:
        mpfr_set(out_hi, b, MPFR_RNDU)
    return 0


def dp_batch(long bits, log_alpha, log9, log_A, log_B, M, convergents, numerators, int max_tries):
    """Reduce every case in ``numerators``.

    ``log_alpha``, ``log9``, ``log_A`` and ``log_B`` are (lo, hi) pairs of
    gmpy2 mpfr values; ``convergents`` is a list of (q, dist_lo, dist_hi,
    logq_lo, logq_hi) starting at the first convergent with q > 6M, where
    dist is the certified distance ||q kappa||.

    Returns one tuple (status, offset, eps_lo, eps_hi, threshold_hi, bound)
    per case; offset counts convergents past the first.
    """
    cdef _Interval la = _Interval(bits)
    cdef _Interval l9 = _Interval(bits)
    cdef _Interval lA = _Interval(bits)
    cdef _Interval lB = _Interval(bits)
    cdef _Interval y = _Interval(bits)
    cdef _Interval mu = _Interval(bits)
    cdef _Interval x = _Interval(bits)
    cdef _Interval d = _Interval(bits)
    cdef _Interval eps = _Interval(bits)
    cdef _Interval tmp = _Interval(bits)
    cdef _Interval fg = _Interval(bits)
    cdef _Interval ab = _Interval(bits)
    cdef _Interval Mv = _Interval(bits)
    cdef _Interval qv, md, lq
    cdef int status, k, n_conv, ybits
    cdef double eps_lo, eps_hi, thr_hi
    cdef long bound

    la.load(*log_alpha)
    l9.load(*log9)
    lA.load(*log_A)
    lB.load(*log_B)
    Mv.load(M, M)
    if M.bit_length() > bits:
        raise ValueError("M does not fit the working precision")

    # q, M*dist and log q per convergent
    conv = []
    for q, dist_lo, dist_hi, logq_lo, logq_hi in convergents[:max_tries]:
        if q.bit_length() > bits:
            break
        qv = _Interval(bits)
        qv.load(q, q)
        md = _Interval(bits)
        md.load(dist_lo, dist_hi)
        mpfr_mul(md.lo, md.lo, Mv.lo, MPFR_RNDD)
        mpfr_mul(md.hi, md.hi, Mv.hi, MPFR_RNDU)
        lq = _Interval(bits)
        lq.load(logq_lo, logq_hi)
        conv.append((qv, md, lq))
    n_conv = len(conv)

    out = []
    for Y in numerators:
        ybits = Y.bit_length()
        if ybits > bits:
            raise ValueError("numerator does not fit the working precision")
        y.load(Y, Y)
        # mu = (log Y - log 9) / log alpha
        mpfr_log(mu.lo, y.lo, MPFR_RNDD)
        mpfr_log(mu.hi, y.hi, MPFR_RNDU)
        mpfr_sub(mu.lo, mu.lo, l9.hi, MPFR_RNDD)
        mpfr_sub(mu.hi, mu.hi, l9.lo, MPFR_RNDU)
        if mpfr_sgn(mu.lo) >= 0:
            mpfr_div(mu.lo, mu.lo, la.hi, MPFR_RNDD)
        else:
            mpfr_div(mu.lo, mu.lo, la.lo, MPFR_RNDD)
        if mpfr_sgn(mu.hi) >= 0:
            mpfr_div(mu.hi, mu.hi, la.lo, MPFR_RNDU)
        else:
            mpfr_div(mu.hi, mu.hi, la.hi, MPFR_RNDU)

        status = NO_CONVERGENT
        eps_lo = eps_hi = thr_hi = 0.0
        bound = -1
        k = 0
        for k in range(n_conv):
            qv, md, lq = conv[k]
            # x = mu * q (q > 0)
            mpfr_mul(x.lo, mu.lo, qv.lo, MPFR_RNDD)
            mpfr_mul(x.hi, mu.hi, qv.hi, MPFR_RNDU)
            if _distance(d.lo, d.hi, x.lo, x.hi, fg.lo, fg.hi, ab.lo, ab.hi):
                status = AMBIGUOUS
                break
            mpfr_sub(eps.lo, d.lo, md.hi, MPFR_RNDD)
            mpfr_sub(eps.hi, d.hi, md.lo, MPFR_RNDU)
            eps_lo = mpfr_get_d(eps.lo, MPFR_RNDD)
            eps_hi = mpfr_get_d(eps.hi, MPFR_RNDU)
            if mpfr_sgn(eps.lo) <= 0:
                continue
            # threshold = (log A + log q - log eps) / log B, upper end
            mpfr_log(tmp.lo, eps.lo, MPFR_RNDD)
            mpfr_add(tmp.hi, lA.hi, lq.hi, MPFR_RNDU)
            mpfr_sub(tmp.hi, tmp.hi, tmp.lo, MPFR_RNDU)
            if mpfr_sgn(tmp.hi) >= 0:
                mpfr_div(tmp.hi, tmp.hi, lB.lo, MPFR_RNDU)
            else:
                mpfr_div(tmp.hi, tmp.hi, lB.hi, MPFR_RNDU)
            thr_hi = mpfr_get_d(tmp.hi, MPFR_RNDU)
            mpfr_ceil(tmp.lo, tmp.hi)
            bound = mpfr_get_si(tmp.lo, MPFR_RNDN) - 1
            status = OK
            break
        out.append((status, k if n_conv else 0, eps_lo, eps_hi, thr_hi, bound))
    return out
