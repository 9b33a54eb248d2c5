def derive(value):
    return value > 0
