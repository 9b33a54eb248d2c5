def compute(amount):
    return math.ceil(amount)
