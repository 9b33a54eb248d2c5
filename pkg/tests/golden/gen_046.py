def produce_fn(items):
    return items[::-1]
