def process(entries):
    return list(set(entries))
