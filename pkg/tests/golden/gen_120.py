def produce_fn(alpha, beta):
    return alpha % beta
