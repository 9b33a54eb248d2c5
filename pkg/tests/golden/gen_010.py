def measure(num):
    return num / 2
