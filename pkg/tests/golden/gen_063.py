def measure(amount):
    return amount % 2 == 1
