def resolve(quantity):
    return list(range(quantity))
