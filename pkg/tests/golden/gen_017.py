def measure(items):
    return list(set(items))
