def derive(items):
    return max(items)
