# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled sparse multiply-accumulate kernels."""


def mul_into(dict out, dict a, dict b, bint negate, object bias, int degshift, long degcap):
    cdef dict tmp
    cdef object ka, va, kb, vb, k, kk, cur
    cdef list bk, bv
    cdef Py_ssize_t j, nb
    cdef long lim = degcap + 128
    cdef bint capped = degcap >= 0
    cdef bint touched = False
    if len(a) > len(b):
        a, b = b, a
    bk = list(b.keys())
    bv = list(b.values())
    nb = len(bk)
    for ka, va in a.items():
        kk = ka - bias
        for j in range(nb):
            k = kk + bk[j]
            if capped and ((k >> degshift) & 255) > lim:
                continue
            cur = out.get(k)
            if cur is None:
                out[k] = -(va * bv[j]) if negate else va * bv[j]
            elif negate:
                out[k] = cur - va * bv[j]
            else:
                out[k] = cur + va * bv[j]
            touched = True
    if touched:
        dead = [k for k, v in out.items() if not v]
        for k in dead:
            del out[k]


def add_into(dict out, dict a, bint negate):
    cdef object k, v, s, cur
    for k, v in a.items():
        cur = out.get(k)
        if cur is None:
            s = -v if negate else v
        else:
            s = cur - v if negate else cur + v
        if s:
            out[k] = s
        elif cur is not None:
            del out[k]
