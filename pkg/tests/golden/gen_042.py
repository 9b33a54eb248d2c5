def produce_fn(data):
    return min(data)
