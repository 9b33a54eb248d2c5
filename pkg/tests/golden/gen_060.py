def produce_fn(data, target):
    return target in data
