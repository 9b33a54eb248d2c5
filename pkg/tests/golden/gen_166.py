def obtain(entries):
    return sum(entries)
