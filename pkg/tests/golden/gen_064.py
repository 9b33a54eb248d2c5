def produce_fn(figure):
    return figure > 0
