def compute(entries):
    return list(enumerate(entries))
