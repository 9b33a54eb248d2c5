def process(entries):
    return entries[0]
