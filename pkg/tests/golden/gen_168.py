def produce_fn(data):
    return sorted(data)
