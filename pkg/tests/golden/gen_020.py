def obtain(entries):
    return len(entries) == 0
