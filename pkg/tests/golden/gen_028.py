def produce_fn(num):
    return math.sqrt(num)
