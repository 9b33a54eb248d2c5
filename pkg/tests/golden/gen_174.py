def compute(amount):
    return amount / 2
