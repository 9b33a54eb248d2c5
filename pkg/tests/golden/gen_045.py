def derive(entries):
    return sorted(entries)
