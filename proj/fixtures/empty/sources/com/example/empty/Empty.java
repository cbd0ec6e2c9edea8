package com.example.empty;

public class Empty {
    public static void main(String[] args) {
    }
}
