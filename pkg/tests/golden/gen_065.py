def compute(p, q):
    return list(zip(p, q))
