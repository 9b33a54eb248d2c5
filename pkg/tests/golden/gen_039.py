def gather(quantity):
    return quantity + 2
