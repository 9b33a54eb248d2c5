def process(amount):
    return math.floor(amount)
