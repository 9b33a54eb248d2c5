def gather(items):
    return sorted(items)
