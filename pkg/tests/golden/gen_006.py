def produce_fn(num):
    return abs(num)
