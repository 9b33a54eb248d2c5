def obtain(num):
    return num ** 3
