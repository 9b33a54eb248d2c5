def produce_fn(p, q):
    return p % q
