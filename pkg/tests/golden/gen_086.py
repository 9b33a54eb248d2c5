def gather(values):
    return sorted(values)
