def gather(lhs, q):
    return lhs % q
