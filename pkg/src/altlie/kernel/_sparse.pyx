# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled sparse polynomial kernels; same contract as ``_sparse_py``.

Products take a packed fast path when it is safe: the exponent fields that
occur are re-packed into one 64-bit word (each field just wide enough for the
largest exponent of the product), coefficients fit in 62 bits, and partial
sums accumulate in 128-bit integers.  Anything else goes through the generic
loop over Python integers.
"""
from array import array
from math import gcd

from libc.stdint cimport int64_t, uint64_t
from libc.stdlib cimport calloc, free, malloc
from cpython.long cimport PyLong_AsLongLongAndOverflow

cdef extern from *:
    """
    typedef __int128 altlie_i128;
    static inline int altlie_add_ovf(altlie_i128 *acc, altlie_i128 v) {
        return __builtin_add_overflow(*acc, v, acc);
    }
    static inline long long altlie_hi(altlie_i128 v) { return (long long)(v >> 64); }
    static inline unsigned long long altlie_lo(altlie_i128 v) { return (unsigned long long)v; }
    static inline int altlie_fits64(altlie_i128 v) { return v == (altlie_i128)(long long)v; }
    static inline altlie_i128 altlie_mul(long long a, long long b) { return (altlie_i128)a * b; }
    """
    ctypedef struct altlie_i128:
        pass
    int altlie_add_ovf(altlie_i128 *acc, altlie_i128 v) nogil
    long long altlie_hi(altlie_i128 v) nogil
    unsigned long long altlie_lo(altlie_i128 v) nogil
    int altlie_fits64(altlie_i128 v) nogil
    altlie_i128 altlie_mul(long long a, long long b) nogil

WIDTH = 16
FIELD_MASK = (1 << WIDTH) - 1

DEF CWIDTH = 16
DEF CMASK = 0xFFFF
DEF COEF_LIMIT = 1 << 62
# below this many products the set-up cost of the packed path does not pay off
DEF MIN_PRODUCTS = 256


cpdef dict add_scaled(dict a, object sa, dict b, object sb):
    cdef dict out
    cdef object k, c, v
    if sa == 1:
        out = a.copy()
    else:
        out = {k: c * sa for k, c in a.items()}
    for k, c in b.items():
        v = out.get(k, 0) + c * sb
        if v:
            out[k] = v
        else:
            out.pop(k, None)
    return out


cpdef long partial_degree(object key, tuple offsets):
    cdef long d = 0
    cdef object off
    for off in offsets:
        d += <long>((key >> off) & FIELD_MASK)
    return d



cdef class _Packed:
    """Keys of both operands re-packed into 64-bit words over the occurring fields."""
    cdef list fields          # occurring field indices, ascending
    cdef list shifts          # bit position of each field in the packed word
    cdef list widths
    cdef int nbytes           # byte length of the original keys

    cdef uint64_t pack(self, object key) except? 0:
        cdef bytes raw = key.to_bytes(self.nbytes, "little")
        cdef const unsigned char *buf = raw
        cdef uint64_t out = 0
        cdef Py_ssize_t i
        cdef int f, pos
        for i in range(len(self.fields)):
            f = self.fields[i]
            pos = 2 * f
            out |= (<uint64_t>(buf[pos] | (buf[pos + 1] << 8))) << <int>self.shifts[i]
        return out

    cdef object unpack(self, uint64_t word):
        cdef bytearray raw = bytearray(self.nbytes)
        cdef Py_ssize_t i
        cdef int f, sh, w
        cdef uint64_t e
        for i in range(len(self.fields)):
            f = self.fields[i]
            sh = self.shifts[i]
            w = self.widths[i]
            e = (word >> sh) & ((<uint64_t>1 << w) - 1)
            raw[2 * f] = e & 0xFF
            raw[2 * f + 1] = (e >> 8) & 0xFF
        return int.from_bytes(raw, "little")


cdef object _field_maxima(dict d, int nfields):
    """Per-field maximum exponent over the keys of ``d``."""
    cdef list top = [0] * nfields
    cdef object k
    cdef int f
    cdef long e
    for k in d:
        f = 0
        while k:
            e = k & CMASK
            if e > top[f]:
                top[f] = e
            k >>= CWIDTH
            f += 1
    return top


cdef _Packed _plan(dict a, dict b):
    """A packing for a*b, or None when the product does not fit 64 bits."""
    cdef object occ = 0
    cdef object k
    for k in a:
        occ |= k
    for k in b:
        occ |= k
    cdef int nfields = (occ.bit_length() + CWIDTH - 1) // CWIDTH
    cdef list ta = _field_maxima(a, nfields)
    cdef list tb = _field_maxima(b, nfields)
    cdef _Packed p = _Packed()
    p.fields, p.shifts, p.widths = [], [], []
    p.nbytes = 2 * max(nfields, 1)
    cdef int total = 0, f, w
    for f in range(nfields):
        if ta[f] + tb[f] > CMASK:
            return None     # the sum would carry into the next field
        if ta[f] or tb[f]:
            w = (<long>(ta[f] + tb[f])).bit_length()
            p.fields.append(f)
            p.shifts.append(total)
            p.widths.append(w)
            total += w
    if total > 64:
        return None
    return p


cdef bint _small_coefficients(dict d, int64_t *out):
    cdef Py_ssize_t i = 0
    cdef int overflow
    cdef long long v
    cdef object c
    for c in d.values():
        v = PyLong_AsLongLongAndOverflow(c, &overflow)
        if overflow or v >= COEF_LIMIT or v <= -COEF_LIMIT:
            return False
        out[i] = v
        i += 1
    return True


cdef object _i128_to_py(altlie_i128 v):
    if altlie_fits64(v):
        return <long long>altlie_lo(v)
    return (<object>altlie_hi(v) << 64) | <object>altlie_lo(v)


cdef object _packed_mul(dict a, dict b, tuple offsets, long cap):
    """Packed product; ``None`` means the caller must use the generic loop."""
    cdef Py_ssize_t na = len(a), nb = len(b), i, j
    if na * nb < MIN_PRODUCTS:
        return None
    cdef _Packed plan = _plan(a, b)
    if plan is None:
        return None
    cdef int64_t *ca = <int64_t *>malloc(na * sizeof(int64_t))
    cdef int64_t *cb = <int64_t *>malloc(nb * sizeof(int64_t))
    cdef uint64_t *ka = <uint64_t *>malloc(na * sizeof(uint64_t))
    cdef uint64_t *kb = <uint64_t *>malloc(nb * sizeof(uint64_t))
    cdef long *da = <long *>malloc(na * sizeof(long))
    cdef long *db = <long *>malloc(nb * sizeof(long))
    cdef uint64_t *tkeys = NULL
    cdef altlie_i128 *tvals = NULL
    cdef unsigned char *tused = NULL
    cdef size_t size, mask, slot
    cdef uint64_t key
    cdef bint truncated = offsets is not None
    cdef bint failed = False
    cdef object k
    cdef dict out
    try:
        if not (ca and cb and ka and kb and da and db):
            raise MemoryError()
        if not (_small_coefficients(a, ca) and _small_coefficients(b, cb)):
            return None
        i = 0
        for k in a:
            ka[i] = plan.pack(k)
            da[i] = partial_degree(k, offsets) if truncated else 0
            i += 1
        i = 0
        for k in b:
            kb[i] = plan.pack(k)
            db[i] = partial_degree(k, offsets) if truncated else 0
            i += 1
        size = 16
        while size < 2 * <size_t>(na * nb) and size < (<size_t>1 << 22):
            size <<= 1
        mask = size - 1
        tkeys = <uint64_t *>malloc(size * sizeof(uint64_t))
        tvals = <altlie_i128 *>malloc(size * sizeof(altlie_i128))
        tused = <unsigned char *>calloc(size, 1)
        if not (tkeys and tvals and tused):
            raise MemoryError()
        with nogil:
            for i in range(na):
                for j in range(nb):
                    if truncated and da[i] + db[j] > cap:
                        continue
                    key = ka[i] + kb[j]
                    slot = <size_t>((key * <uint64_t>0x9E3779B97F4A7C15ULL) >> 20) & mask
                    while tused[slot] and tkeys[slot] != key:
                        slot = (slot + 1) & mask
                    if not tused[slot]:
                        tused[slot] = 1
                        tkeys[slot] = key
                        tvals[slot] = altlie_mul(ca[i], cb[j])
                    elif altlie_add_ovf(&tvals[slot], altlie_mul(ca[i], cb[j])):
                        failed = True
                        break
                if failed:
                    break
        if failed:
            return None
        out = {}
        for slot in range(size):
            if tused[slot] and (altlie_hi(tvals[slot]) or altlie_lo(tvals[slot])):
                out[plan.unpack(tkeys[slot])] = _i128_to_py(tvals[slot])
        return out
    finally:
        free(ca); free(cb); free(ka); free(kb); free(da); free(db)
        free(tkeys); free(tvals); free(tused)


cpdef dict mul(dict a, dict b):
    cdef dict out
    cdef list ka_list, ca_list
    cdef Py_ssize_t i, n
    cdef object kb, cb, k, v
    fast = _packed_mul(a, b, None, 0)
    if fast is not None:
        return fast
    out = {}
    if len(a) < len(b):
        a, b = b, a
    ka_list = list(a.keys())
    ca_list = list(a.values())
    n = len(ka_list)
    for kb, cb in b.items():
        for i in range(n):
            k = ka_list[i] + kb
            v = out.get(k)
            if v is None:
                out[k] = ca_list[i] * cb
            else:
                out[k] = v + ca_list[i] * cb
    return {k: v for k, v in out.items() if v}


cpdef dict mul_truncated(dict a, dict b, tuple offsets, long cap):
    cdef dict out = {}
    cdef list db
    cdef Py_ssize_t j, nb
    cdef long dk, room
    cdef long[:] degs_b
    cdef object ka, ca, k, v
    fast = _packed_mul(a, b, offsets, cap)
    if fast is not None:
        return fast
    db = sorted([(partial_degree(k, offsets), k, v) for k, v in b.items()])
    nb = len(db)
    degs_b = array('l', [t[0] for t in db])
    keys_b = [t[1] for t in db]
    coefs_b = [t[2] for t in db]
    for ka, ca in a.items():
        dk = partial_degree(ka, offsets)
        room = cap - dk
        if room < 0:
            continue
        for j in range(nb):
            if degs_b[j] > room:
                break
            k = ka + keys_b[j]
            v = out.get(k)
            if v is None:
                out[k] = ca * coefs_b[j]
            else:
                out[k] = v + ca * coefs_b[j]
    return {k: v for k, v in out.items() if v}


cpdef object content(dict a):
    return gcd(*a.values()) if a else 0


cpdef dict scale_div(dict a, object num, object den):
    cdef object k, c
    return {k: c * num // den for k, c in a.items()}
