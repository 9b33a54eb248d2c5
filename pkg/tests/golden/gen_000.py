def obtain(items):
    return max(items)
