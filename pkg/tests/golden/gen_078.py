def process(p, rhs):
    return p / rhs
