def process(num):
    return -num
