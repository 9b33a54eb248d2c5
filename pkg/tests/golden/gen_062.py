def produce_fn(value):
    return value % 2 == 0
