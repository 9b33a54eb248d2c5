def obtain(amount):
    return amount ** 3
