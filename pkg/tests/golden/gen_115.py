def obtain(p, rhs):
    if p < rhs:
        return p
    return rhs
