"""Pure-Python sparse multiply-accumulate kernels (fallback)."""


def mul_into(out, a, b, negate, bias, degshift, degcap):
    """out[ka + kb - bias] += (+/-) a[ka] * b[kb], skipping keys over the degree cap.

    Keys are packed exponent vectors; the field at ``degshift`` stores the biased
    total degree. ``degcap < 0`` disables the cap. Zero entries are removed.
    """
    get = out.get
    if len(a) > len(b):
        a, b = b, a
    touched = False
    if degcap < 0:
        if negate:
            for ka, va in a.items():
                kk = ka - bias
                for kb, vb in b.items():
                    k = kk + kb
                    out[k] = get(k, 0) - va * vb
        else:
            for ka, va in a.items():
                kk = ka - bias
                for kb, vb in b.items():
                    k = kk + kb
                    out[k] = get(k, 0) + va * vb
        touched = True
    else:
        lim = degcap + 128
        for ka, va in a.items():
            kk = ka - bias
            for kb, vb in b.items():
                k = kk + kb
                if ((k >> degshift) & 255) > lim:
                    continue
                if negate:
                    out[k] = get(k, 0) - va * vb
                else:
                    out[k] = get(k, 0) + va * vb
                touched = True
    if touched:
        dead = [k for k, v in out.items() if not v]
        for k in dead:
            del out[k]


def add_into(out, a, negate):
    """out += (+/-) a, removing zeros."""
    get = out.get
    for k, v in a.items():
        s = get(k, 0) - v if negate else get(k, 0) + v
        if s:
            out[k] = s
        elif k in out:
            del out[k]
