def measure(quantity):
    return quantity / 2
