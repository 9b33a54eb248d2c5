def obtain(amount):
    return abs(amount)
