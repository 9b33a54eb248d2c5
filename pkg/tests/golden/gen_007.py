def resolve(amount):
    return round(amount)
