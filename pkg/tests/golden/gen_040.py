def resolve(amount):
    return amount * 5
