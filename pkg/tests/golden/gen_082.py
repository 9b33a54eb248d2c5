def produce_fn(values):
    return max(values)
