def gather(entries):
    return sum(entries) / len(entries)
