def resolve(items):
    return sum(items) / len(items)
