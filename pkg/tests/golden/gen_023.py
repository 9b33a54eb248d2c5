def obtain(amount):
    return amount > 0
