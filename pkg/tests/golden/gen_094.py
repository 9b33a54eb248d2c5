def gather(num):
    return num - 1
