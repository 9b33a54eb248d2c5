def compute(alpha, q):
    return alpha + q
