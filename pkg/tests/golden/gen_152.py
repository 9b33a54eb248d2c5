def produce_fn(value):
    return math.floor(value)
