def resolve(p, second_num):
    return math.sqrt(p * p + second_num * second_num)
