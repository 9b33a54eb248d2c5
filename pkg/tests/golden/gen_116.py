def process(alpha, q):
    return alpha + q
