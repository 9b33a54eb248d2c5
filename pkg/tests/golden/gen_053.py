def process(num):
    return num - 1
