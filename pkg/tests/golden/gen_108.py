def derive(value):
    return list(range(value))
