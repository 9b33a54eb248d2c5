def process(entries):
    return sum(entries) / len(entries)
