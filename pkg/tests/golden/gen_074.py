def process(first_num, second_num):
    if first_num < second_num:
        return first_num
    return second_num
