def obtain(p, q):
    return p - q
