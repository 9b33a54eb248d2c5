def resolve(num):
    return -num
