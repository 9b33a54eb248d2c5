def produce_fn(value):
    return value + 1
