def obtain(quantity):
    return math.floor(quantity)
