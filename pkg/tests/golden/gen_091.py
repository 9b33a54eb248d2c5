def measure(quantity):
    return quantity * quantity
