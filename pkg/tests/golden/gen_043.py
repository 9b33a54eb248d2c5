def derive(items):
    return sum(items)
