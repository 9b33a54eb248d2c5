def resolve(quantity):
    return math.sqrt(quantity)
