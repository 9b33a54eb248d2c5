def gather(amount):
    return -amount
